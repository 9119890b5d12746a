// Copyright 2026 The Paragate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "paragate/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "paragate/common.hpp"

namespace paragate {

using nlohmann::json;

std::vector<double> SweepAxis::values() const {
  std::vector<double> v;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) v.push_back(start + (stop - start) * i / (count - 1));
  return v;
}

namespace {

// Object reader that remembers which keys were consumed, so leftovers can be
// reported as unknown.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key) {
    if (!has(key)) throw ConfigError(where(key) + ": required number missing");
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(where(key) + ": expected a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }
  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(where(key) + ": expected an integer");
    return v.get<int>();
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(where(key) + ": expected true or false");
    return v.get<bool>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(where(key) + ": expected a string");
    return v.get<std::string>();
  }
  Section child(const std::string& key) { return Section(raw(key), where(key)); }

  std::string where(const std::string& key = "") const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.count(key)) throw ConfigError(where(key) + ": unknown key");
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

Label label_at(Section& s, const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(s.where(key) + ": expected a label string such as \"100\"");
  try {
    return parse_label(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    throw ConfigError(s.where(key) + ": bad label '" + v.get<std::string>() + "'");
  }
}

ToyParams parse_toy(Section s) {
  ToyParams t;
  t.omega_a = to_angular(s.number("omega_a"));
  t.omega_b = to_angular(s.number("omega_b"));
  t.omega_c = to_angular(s.number("omega_c"));
  t.alpha_a = to_angular(s.number("alpha_a", 0));
  t.alpha_b = to_angular(s.number("alpha_b", 0));
  t.alpha_c = to_angular(s.number("alpha_c", 0));
  t.g_ab = to_angular(s.number("g_ab", 0));
  t.g_bc = to_angular(s.number("g_bc", 0));
  t.g_ca = to_angular(s.number("g_ca", 0));
  s.finish();
  return t;
}

CircuitParams parse_circuit(Section s) {
  CircuitParams p;
  p.C_a = s.number("C_a");
  p.C_b = s.number("C_b");
  p.C_c = s.number("C_c");
  p.C_ab = s.number("C_ab", 0);
  p.C_bc = s.number("C_bc", 0);
  p.C_ac = s.number("C_ac", 0);
  if (s.has("C_alpha")) p.C_alpha = s.number("C_alpha");
  if (s.has("C_beta")) p.C_beta = s.number("C_beta");
  if (s.has("mu_alpha")) p.mu_alpha = s.number("mu_alpha");
  if (s.has("mu_beta")) p.mu_beta = s.number("mu_beta");
  if (p.C_alpha.has_value() != p.C_beta.has_value())
    throw ConfigError(s.where(p.C_alpha ? "C_beta" : "C_alpha") +
                      ": branch capacitances must be given together");
  if (p.mu_alpha.has_value() != p.mu_beta.has_value())
    throw ConfigError(s.where(p.mu_alpha ? "mu_beta" : "mu_alpha") +
                      ": flux weights must be given together");
  p.E_Ja = to_angular(s.number("E_Ja"));
  p.E_Jb = to_angular(s.number("E_Jb"));
  p.E_Jc = to_angular(s.number("E_Jc"));
  p.alpha = s.number("alpha", 1);
  p.beta = s.number("beta", 1);
  p.N = s.integer("N", 1);
  p.epsilon = s.number("epsilon", 1);
  s.finish();
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(s.where() + ": " + e.what());
  }
  return p;
}

void parse_drive(Section s, RunConfig& cfg) {
  ModelPoint& m = cfg.base;
  if (m.is_toy()) {
    std::get<ToyParams>(m.model).delta = to_angular(s.number("delta", 0));
  } else {
    m.drive.phi_ext_bar = kTwoPi * s.number("phi_ext_bar_over_2pi", 0);
    m.drive.delta_phi = kTwoPi * s.number("delta_phi_over_2pi", 0);
    if (m.drive.delta_phi < 0) throw ConfigError(s.where("delta_phi_over_2pi") + ": must be >= 0");
  }
  m.drive.n_harmonics = s.integer("n_harmonics", 2);
  if (m.drive.n_harmonics < 1) throw ConfigError(s.where("n_harmonics") + ": must be >= 1");

  if (s.has("omega_d")) {
    const json& v = s.raw("omega_d");
    if (v.is_number()) {
      cfg.floquet.policy = DrivePolicy::fixed;
      m.drive.omega_d = to_angular(v.get<double>());
      if (!(m.drive.omega_d > 0)) throw ConfigError(s.where("omega_d") + ": must be positive");
    } else if (v == "calibrate") {
      cfg.floquet.policy = DrivePolicy::calibrate;
    } else if (v == "formula") {
      cfg.floquet.policy = DrivePolicy::formula;
    } else {
      throw ConfigError(s.where("omega_d") + ": expected GHz, \"calibrate\" or \"formula\"");
    }
  }
  const std::string method = s.text("calibration", "golden");
  if (method == "golden") cfg.floquet.method = CalibrationMethod::golden;
  else if (method == "two_level") cfg.floquet.method = CalibrationMethod::two_level;
  else throw ConfigError(s.where("calibration") + ": expected \"golden\" or \"two_level\"");

  if (s.has("pair")) {
    const json& v = s.raw("pair");
    if (!v.is_array() || v.size() != 2) throw ConfigError(s.where("pair") + ": expected two labels");
    cfg.floquet.first = label_at(s, v[0], "pair");
    cfg.floquet.second = label_at(s, v[1], "pair");
  }
  s.finish();
}

void parse_numerics(Section s, RunConfig& cfg) {
  ModelPoint& m = cfg.base;
  if (s.has("dims")) {
    const json& v = s.raw("dims");
    if (!v.is_array() || v.size() != 3)
      throw ConfigError(s.where("dims") + ": expected three integers");
    std::vector<int> dims;
    for (const auto& d : v) {
      if (!d.is_number_integer() || d.get<int>() < 2)
        throw ConfigError(s.where("dims") + ": every dimension must be an integer >= 2");
      dims.push_back(d.get<int>());
    }
    m.layout = FockLayout(dims);
  }
  PropagatorOptions& p = cfg.floquet.propagator;
  p.tol = s.number("propagator_tol", p.tol);
  p.grid_points = s.integer("grid_points", p.grid_points);
  p.initial_steps = s.integer("steps", p.initial_steps);
  p.max_steps = s.integer("max_steps", p.max_steps);
  p.adaptive = s.boolean("adaptive", p.adaptive);
  if (p.grid_points < 0) throw ConfigError(s.where("grid_points") + ": must be >= 0");
  if (p.initial_steps < 1) throw ConfigError(s.where("steps") + ": must be >= 1");
  if (!(p.tol > 0)) throw ConfigError(s.where("propagator_tol") + ": must be positive");
  const std::string integ = s.text("integrator", "magnus4");
  if (integ == "magnus4") p.integrator = Integrator::magnus4;
  else if (integ == "midpoint") p.integrator = Integrator::midpoint;
  else throw ConfigError(s.where("integrator") + ": expected \"magnus4\" or \"midpoint\"");
  cfg.floquet.threshold = s.number("overlap_threshold", cfg.floquet.threshold);
  if (cfg.floquet.threshold < 0 || cfg.floquet.threshold > 1)
    throw ConfigError(s.where("overlap_threshold") + ": must lie in [0, 1]");
  cfg.den_tol = to_angular(s.number("den_tol", to_ghz(cfg.den_tol)));
  m.build.order = s.integer("order", m.build.order);
  if (m.build.order < 2) throw ConfigError(s.where("order") + ": must be >= 2");
  m.build.displace = s.boolean("displace", m.build.displace);
  m.rwa = s.boolean("rwa_strip", m.rwa);
  s.finish();
}

SweepAxis parse_axis(Section s, bool toy) {
  SweepAxis a;
  a.name = s.text("name", "");
  const auto names = axis_names(toy);
  if (std::find(names.begin(), names.end(), a.name) == names.end())
    throw ConfigError(s.where("name") + ": unknown sweep axis '" + a.name + "'");
  a.start = s.number("start");
  a.stop = s.number("stop", a.start);
  a.count = s.integer("count", 1);
  if (a.count < 1) throw ConfigError(s.where("count") + ": must be >= 1");
  s.finish();
  return a;
}

void parse_sweep(Section s, RunConfig& cfg) {
  const bool toy = cfg.base.is_toy();
  if (s.has("axes")) {
    const json& v = s.raw("axes");
    if (!v.is_array() || v.empty() || v.size() > 2)
      throw ConfigError(s.where("axes") + ": expected one or two axis objects");
    for (std::size_t i = 0; i < v.size(); ++i)
      cfg.axes.push_back(parse_axis(Section(v[i], s.where("axes") + "[" + std::to_string(i) + "]"), toy));
  }
  s.finish();
}

void parse_spectroscopy(Section s, RunConfig& cfg) {
  SpectroscopySettings& sp = cfg.spectroscopy;
  if (s.has("labels")) {
    const json& v = s.raw("labels");
    if (!v.is_array() || v.empty()) throw ConfigError(s.where("labels") + ": expected label strings");
    sp.labels.clear();
    for (const auto& l : v) sp.labels.push_back(label_at(s, l, "labels"));
  }
  if (s.has("k_range")) {
    const json& v = s.raw("k_range");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer() ||
        v[0].get<int>() > v[1].get<int>())
      throw ConfigError(s.where("k_range") + ": expected [k_min, k_max]");
    sp.k_min = v[0].get<int>();
    sp.k_max = v[1].get<int>();
  }
  const int mode = s.integer("probe_mode", 0);
  if (mode < 0 || mode > 2) throw ConfigError(s.where("probe_mode") + ": must be 0, 1 or 2");
  sp.probe_mode = static_cast<std::size_t>(mode);
  s.finish();
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("<root>: not valid JSON: ") + e.what());
  }
  Section root(doc, "");
  RunConfig cfg;
  const bool toy = root.has("toy"), circuit = root.has("circuit");
  if (toy == circuit) throw ConfigError("<root>: exactly one of 'toy' and 'circuit' is required");
  if (toy) cfg.base.model = parse_toy(root.child("toy"));
  else cfg.base.model = parse_circuit(root.child("circuit"));

  if (root.has("drive")) parse_drive(root.child("drive"), cfg);
  if (root.has("numerics")) parse_numerics(root.child("numerics"), cfg);
  if (root.has("sweep")) parse_sweep(root.child("sweep"), cfg);
  if (root.has("spectroscopy")) parse_spectroscopy(root.child("spectroscopy"), cfg);
  if (root.has("rabi")) {
    Section r = root.child("rabi");
    cfg.rabi_periods = r.integer("periods", 0);
    if (cfg.rabi_periods < 0) throw ConfigError(r.where("periods") + ": must be >= 0");
    r.finish();
  }
  if (root.has("output")) {
    Section o = root.child("output");
    cfg.output_path = o.text("path", "");
    cfg.output_format = o.text("format", "csv");
    if (cfg.output_format != "csv") throw ConfigError(o.where("format") + ": only \"csv\" is supported");
    o.finish();
  }
  root.finish();
  cfg.source = doc.dump();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::string> axis_names(bool toy) {
  if (toy)
    return {"omega_a", "omega_b", "omega_c", "alpha_a", "alpha_b", "alpha_c",
            "g_ab",    "g_bc",    "g_ca",    "delta",   "omega_d"};
  return {"phi_ext_bar_over_2pi", "delta_phi_over_2pi", "E_Ja", "E_Jb", "E_Jc", "omega_d"};
}

void apply_axis(ModelPoint& point, const std::string& name, double value) {
  if (name == "omega_d") {
    point.drive.omega_d = to_angular(value);
    return;
  }
  if (auto* t = std::get_if<ToyParams>(&point.model)) {
    double* target = name == "omega_a"   ? &t->omega_a
                     : name == "omega_b" ? &t->omega_b
                     : name == "omega_c" ? &t->omega_c
                     : name == "alpha_a" ? &t->alpha_a
                     : name == "alpha_b" ? &t->alpha_b
                     : name == "alpha_c" ? &t->alpha_c
                     : name == "g_ab"    ? &t->g_ab
                     : name == "g_bc"    ? &t->g_bc
                     : name == "g_ca"    ? &t->g_ca
                     : name == "delta"   ? &t->delta
                                         : nullptr;
    if (!target) throw std::invalid_argument("unknown toy sweep axis '" + name + "'");
    *target = to_angular(value);
    return;
  }
  auto& c = std::get<CircuitParams>(point.model);
  if (name == "phi_ext_bar_over_2pi") point.drive.phi_ext_bar = kTwoPi * value;
  else if (name == "delta_phi_over_2pi") point.drive.delta_phi = kTwoPi * value;
  else if (name == "E_Ja") c.E_Ja = to_angular(value);
  else if (name == "E_Jb") c.E_Jb = to_angular(value);
  else if (name == "E_Jc") c.E_Jc = to_angular(value);
  else throw std::invalid_argument("unknown circuit sweep axis '" + name + "'");
}

}  // namespace paragate
