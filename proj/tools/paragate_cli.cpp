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

// Command-line front end: paragate <analyze|spectroscopy|calibrate|rabi-check|chi-zero>.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "paragate/common.hpp"
#include "paragate/config.hpp"
#include "paragate/floquet.hpp"
#include "paragate/reports.hpp"

namespace pg = paragate;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Options {
  std::string config;
  std::string output;
  int threads = 0;
  std::string mode = "both";
  bool rwa = false;
  std::string k_range;
};

pg::AnalysisMode parse_mode(const std::string& text) {
  pg::AnalysisMode m{false, false};
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "analytic") m.analytic = true;
    else if (item == "floquet") m.floquet = true;
    else if (item == "both") m.analytic = m.floquet = true;
    else throw pg::ConfigError("--mode: unknown value '" + item + "'");
  }
  if (!m.analytic && !m.floquet) throw pg::ConfigError("--mode: nothing selected");
  return m;
}

void parse_k_range(const std::string& text, pg::RunConfig& cfg) {
  const auto colon = text.find(':', 1);
  try {
    if (colon == std::string::npos) throw std::invalid_argument(text);
    cfg.spectroscopy.k_min = std::stoi(text.substr(0, colon));
    cfg.spectroscopy.k_max = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw pg::ConfigError("--k-range: expected kmin:kmax, got '" + text + "'");
  }
  if (cfg.spectroscopy.k_min > cfg.spectroscopy.k_max)
    throw pg::ConfigError("--k-range: kmin exceeds kmax");
}

// Writes to the chosen path (CLI flag, then config) or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) : path_(path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw pg::ConfigError("output.path: cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
};

void write_metadata_file(const Sink& sink, const pg::RunConfig& cfg, const std::string& command,
                         double seconds, const std::map<std::string, std::string>& extra = {}) {
  if (sink.path().empty()) return;
  std::ofstream meta(sink.path() + ".json");
  pg::write_metadata(meta, cfg, command, seconds, extra);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<std::string> key_names(const pg::RunConfig& cfg) {
  std::vector<std::string> names;
  for (const auto& a : cfg.axes) names.push_back(a.name);
  return names;
}

bool any_error(const std::vector<pg::GateReport>& rows) {
  for (const auto& r : rows)
    for (const auto& f : r.flags)
      if (f.rfind("error:", 0) == 0) return true;
  return false;
}

int run_analyze(const pg::RunConfig& cfg, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = pg::sweep(cfg, parse_mode(o.mode), o.threads);
  Sink sink(o.output.empty() ? cfg.output_path : o.output);
  pg::write_reports_csv(sink.stream(), cfg.axes, rows);
  write_metadata_file(sink, cfg, "analyze", seconds_since(t0));
  return any_error(rows) ? kNumericalError : 0;
}

int run_spectroscopy(const pg::RunConfig& cfg, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = pg::sweep_grid(cfg.axes);
  Sink sink(o.output.empty() ? cfg.output_path : o.output);
  int status = 0;
  bool header = true;
  for (const auto& key : grid) {
    try {
      const pg::ModelPoint point = pg::point_at(cfg, key);
      const auto h = pg::build_hamiltonian(point);
      const auto ref = pg::static_eigensolve(h.static_part);
      const double omega = pg::select_drive_frequency(point, cfg.floquet, h, ref);
      pg::PropagatorOptions prop = cfg.floquet.propagator;
      if (prop.grid_points == 0) prop.grid_points = 128;
      const auto p = pg::propagate_one_period(h, omega, prop);
      const auto sol = pg::floquet_decompose(p.U, omega, ref, cfg.floquet.threshold);
      const auto probe = pg::probe_operator(point, cfg.spectroscopy.probe_mode);
      const auto pts = pg::two_tone_spectrum(sol, p, probe, cfg.spectroscopy.labels,
                                             cfg.spectroscopy.k_min, cfg.spectroscopy.k_max);
      pg::write_spectrum_csv(sink.stream(), key_names(cfg), key, pts, header);
      header = false;
    } catch (const pg::NumericalError& e) {
      std::cerr << "spectroscopy: point skipped: " << e.what() << '\n';
      status = kNumericalError;
    }
  }
  write_metadata_file(sink, cfg, "spectroscopy", seconds_since(t0));
  return status;
}

int run_calibrate(const pg::RunConfig& cfg, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Sink sink(o.output.empty() ? cfg.output_path : o.output);
  auto& out = sink.stream();
  for (const auto& n : key_names(cfg)) out << n << ',';
  out << "omega_d_star,gap,J,solves\n";
  out.precision(10);
  int status = 0;
  for (const auto& key : pg::sweep_grid(cfg.axes)) {
    for (double k : key) out << k << ',';
    try {
      const pg::ModelPoint point = pg::point_at(cfg, key);
      const auto h = pg::build_hamiltonian(point);
      const auto ref = pg::static_eigensolve(h.static_part);
      pg::CalibrationOptions opt;
      opt.method = cfg.floquet.method;
      opt.propagator = cfg.floquet.propagator;
      opt.propagator.grid_points = 0;
      opt.threshold = cfg.floquet.threshold;
      const double guess = std::abs(ref.energy(cfg.floquet.second) - ref.energy(cfg.floquet.first));
      const auto c = pg::calibrate_drive_frequency(h, ref, guess, cfg.floquet.first,
                                                   cfg.floquet.second, opt);
      out << pg::to_ghz(c.omega_d) << ',' << pg::to_ghz(c.gap) << ',' << pg::to_ghz(c.J) << ','
          << c.solves << '\n';
    } catch (const pg::NumericalError& e) {
      out << "nan,nan,nan,0\n";
      std::cerr << "calibrate: " << e.what() << '\n';
      status = kNumericalError;
    }
  }
  write_metadata_file(sink, cfg, "calibrate", seconds_since(t0));
  return status;
}

int run_rabi(const pg::RunConfig& cfg, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = pg::sweep_grid(cfg.axes);
  const pg::ModelPoint point = pg::point_at(cfg, grid.front());
  const auto h = pg::build_hamiltonian(point);
  const auto ref = pg::static_eigensolve(h.static_part);
  pg::CalibrationOptions opt;
  opt.method = cfg.floquet.method;
  opt.propagator = cfg.floquet.propagator;
  opt.propagator.grid_points = 0;
  opt.threshold = cfg.floquet.threshold;
  const double guess = std::abs(ref.energy(cfg.floquet.second) - ref.energy(cfg.floquet.first));
  const auto c = pg::calibrate_drive_frequency(h, ref, guess, cfg.floquet.first,
                                               cfg.floquet.second, opt);
  const double swap = std::numbers::pi / c.J;
  const int periods = cfg.rabi_periods > 0
                          ? cfg.rabi_periods
                          : static_cast<int>(std::ceil(swap / c.propagation.period));
  const auto trace = pg::rabi_crosscheck(c.propagation, ref, cfg.floquet.first,
                                         {cfg.floquet.first, cfg.floquet.second}, periods);
  Sink sink(o.output.empty() ? cfg.output_path : o.output);
  auto& out = sink.stream();
  out.precision(10);
  const auto& p1 = trace.populations.at(cfg.floquet.first);
  const auto& p2 = trace.populations.at(cfg.floquet.second);
  out << "t,P_" << pg::to_string(cfg.floquet.first) << ",P_" << pg::to_string(cfg.floquet.second)
      << ",sin2_Jt\n";
  double worst = 0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double model = std::pow(std::sin(c.J * trace.times[i]), 2);
    worst = std::max(worst, std::abs(p2[i] - model));
    out << trace.times[i] << ',' << p1[i] << ',' << p2[i] << ',' << model << '\n';
  }
  std::cerr << "omega_d* = " << pg::to_ghz(c.omega_d) << " GHz, J = " << pg::to_ghz(c.J) * 1e3
            << " MHz, max |P - sin^2(Jt)| = " << worst << '\n';
  write_metadata_file(sink, cfg, "rabi-check", seconds_since(t0),
                      {{"max_deviation", std::to_string(worst)},
                       {"J_GHz", std::to_string(pg::to_ghz(c.J))}});
  return 0;
}

int run_chi_zero(const pg::RunConfig& cfg, const Options& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const pg::AnalysisMode mode = parse_mode(o.mode);
  const auto rows = pg::sweep(cfg, mode, o.threads);
  const pg::ChiSource source = mode.floquet ? pg::ChiSource::floquet : pg::ChiSource::analytic;
  pg::PointEvaluator refine;
  if (mode.floquet) {
    refine = [&](double control, double slice) {
      std::vector<double> key{control};
      if (cfg.axes.size() > 1) key.push_back(slice);
      return pg::evaluate_point(pg::point_at(cfg, key), cfg.floquet, mode, cfg.den_tol);
    };
  }
  const auto curve = pg::chi_zero_curve(rows, source, refine);
  Sink sink(o.output.empty() ? cfg.output_path : o.output);
  pg::write_chi_zero_csv(sink.stream(), curve);
  for (const auto& n : curve.notes) std::cerr << "chi-zero: " << n << '\n';
  if (!sink.path().empty()) {
    std::ofstream traces(sink.path() + ".traces.csv");
    traces << "slice,region,control,chi,J\n";
    for (const auto& t : curve.traces)
      traces << t.slice << ',' << t.region << ',' << t.control << ',' << t.chi << ',' << t.J << '\n';
  }
  write_metadata_file(sink, cfg, "chi-zero", seconds_since(t0));
  return any_error(rows) ? kNumericalError : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric two-qubit gate characterization"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON run configuration")->required();
    sub->add_option("--output", o.output, "Output CSV path (default: config output.path or stdout)");
    sub->add_option("--threads", o.threads, "Worker threads for sweeps (0: OpenMP default)");
    sub->add_option("--mode", o.mode, "analytic, floquet or both (comma list accepted)");
    sub->add_flag("--rwa-strip", o.rwa, "Drop photon-number nonconserving terms");
    sub->add_option("--k-range", o.k_range, "Photon index range kmin:kmax for spectroscopy");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "Sweep gate observables to CSV");
  CLI::App* spectro = app.add_subcommand("spectroscopy", "Two-tone spectrum of the Floquet modes");
  CLI::App* calib = app.add_subcommand("calibrate", "Resonant drive frequency per grid point");
  CLI::App* rabi = app.add_subcommand("rabi-check", "Populations from chained period propagators");
  CLI::App* chi0 = app.add_subcommand("chi-zero", "Locate vanishing cross-Kerr along the sweep");
  for (CLI::App* s : {analyze, spectro, calib, rabi, chi0}) common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    pg::RunConfig cfg = pg::load_config(o.config);
    if (o.rwa) cfg.base.rwa = true;
    if (!o.k_range.empty()) parse_k_range(o.k_range, cfg);
    if (*analyze) return run_analyze(cfg, o);
    if (*spectro) return run_spectroscopy(cfg, o);
    if (*calib) return run_calibrate(cfg, o);
    if (*rabi) return run_rabi(cfg, o);
    return run_chi_zero(cfg, o);
  } catch (const pg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const pg::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  }
}
