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

// Acceptance driver: one PASS/FAIL line per criterion. The exit status is
// nonzero only if a check could not run at all; a FAIL line is a result.
// Criterion numbers given on the command line restrict the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "paragate/analytics.hpp"
#include "paragate/normal_modes.hpp"
#include "paragate/reports.hpp"
#include "property_suites.hpp"

namespace {

using namespace paragate;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ModelPoint toy_point(const ToyParams& t, std::vector<int> dims) {
  ModelPoint p;
  p.model = t;
  p.layout = FockLayout(std::move(dims));
  return p;
}

PropagatorOptions fixed(int steps) {
  PropagatorOptions o;
  o.adaptive = false;
  o.initial_steps = steps;
  o.grid_points = 0;
  return o;
}

bool has_flag(const GateReport& r, const std::string& flag) {
  return std::find(r.flags.begin(), r.flags.end(), flag) != r.flags.end();
}

constexpr double kScanLo = 4.2, kScanHi = 5.3;
constexpr int kScanPoints = 50;

Verdict check_static_cross_kerr() {
  RunConfig cfg;
  cfg.base = toy_point(fixtures::fig2_toy(4.5), {5, 5, 5});
  cfg.axes = {{"omega_c", kScanLo, kScanHi, kScanPoints}};
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = sweep(cfg, AnalysisMode{true, false});
  const double elapsed = seconds_since(t0);

  int poles = 0, bad = 0;
  double worst = 0;
  for (const auto& r : rows) {
    if (has_flag(r, "pole")) {
      ++poles;
      continue;
    }
    const double err = std::abs(r.chi2 - r.chi_static);
    const double allowed = std::max(0.1 * std::abs(r.chi_static), 1e-4);
    worst = std::max(worst, err / allowed);
    if (!(err <= allowed)) ++bad;
  }
  return {bad == 0 && elapsed < 30,
          format("%d points, %d in pole windows, worst error %.2f of allowance, %d outside, %.1f s",
                 static_cast<int>(rows.size()), poles, worst, bad, elapsed)};
}

FloquetSettings two_level_settings() {
  FloquetSettings s;
  s.policy = DrivePolicy::calibrate;
  s.method = CalibrationMethod::two_level;
  s.propagator.tol = 1e-8;
  s.propagator.initial_steps = 64;
  return s;
}

Verdict check_gate_rate() {
  RunConfig cfg;
  cfg.base = toy_point(fixtures::fig2_toy(4.5, 0.3), {5, 5, 5});
  cfg.floquet = two_level_settings();
  cfg.axes = {{"omega_c", kScanLo, kScanHi, kScanPoints}};
  const auto rows = sweep(cfg, AnalysisMode{true, true});
  double worst = 0;
  int compared = 0, skipped = 0;
  for (const auto& r : rows) {
    if (!std::isfinite(r.J_floquet) || !std::isfinite(r.J2_bessel)) {
      ++skipped;
      continue;
    }
    ++compared;
    worst = std::max(worst, std::abs(r.J_floquet - std::abs(r.J2_bessel)) / std::abs(r.J2_bessel));
  }

  // Small modulation: both estimates approach u_ca u_cb delta / 2.
  double worst_small = 0;
  for (double wc : {4.25, 4.5, 4.75, 5.0, 5.25}) {
    const ToyParams t = fixtures::fig2_toy(wc, 0.01);
    const NormalModeBasis basis = toy_basis(t);
    const double linear = std::abs(to_ghz(basis.u(2, 0) * basis.u(2, 1) * t.delta / 2));
    const auto r = evaluate_point(toy_point(t, {5, 5, 5}), cfg.floquet, AnalysisMode{true, true});
    for (double j : {r.J_floquet, std::abs(r.J2_bessel)})
      worst_small = std::max(worst_small, std::isfinite(j) ? std::abs(j - linear) / linear : 1.0);
  }
  return {compared > 0 && skipped == 0 && worst < 0.05 && worst_small < 0.01,
          format("delta 0.3: %d compared, %d untracked, worst rel %.4f; delta 0.01: worst rel %.5f",
                 compared, skipped, worst, worst_small)};
}

// Shared by the Rabi and gap criteria.
struct GoldenRun {
  HarmonicHamiltonian h;
  StaticReference ref;
  Calibration cal;
};

GoldenRun golden_run() {
  const ToyParams t = fixtures::fig2_toy(4.25, 0.3);
  GoldenRun g{build_toy_hamiltonian(t, FockLayout({5, 5, 5})), {}, {}};
  g.ref = static_eigensolve(g.h.static_part);
  CalibrationOptions o;
  o.method = CalibrationMethod::golden;
  o.propagator.tol = 1e-10;
  o.propagator.grid_points = 0;
  const double guess = g.ref.energy({0, 1, 0}) - g.ref.energy({1, 0, 0});
  g.cal = calibrate_drive_frequency(g.h, g.ref, guess, {1, 0, 0}, {0, 1, 0}, o);
  return g;
}

Verdict check_rabi(const GoldenRun& g) {
  const Calibration& c = g.cal;
  const int periods = static_cast<int>(std::ceil(std::numbers::pi / c.J / c.propagation.period));
  const auto trace = rabi_crosscheck(c.propagation, g.ref, {1, 0, 0}, {{0, 1, 0}}, periods);
  double worst = 0;
  for (std::size_t i = 0; i < trace.times.size(); ++i) {
    const double p = trace.populations.at({0, 1, 0})[i];
    worst = std::max(worst, std::abs(p - std::pow(std::sin(c.J * trace.times[i]), 2)));
  }
  return {worst < 1e-2, format("omega_d* %.6f GHz, J %.4f MHz, %d periods, max deviation %.2e",
                               to_ghz(c.omega_d), 1e3 * to_ghz(c.J), periods, worst)};
}

Verdict check_anticrossing(const GoldenRun& g) {
  const Calibration& c = g.cal;
  PropagatorOptions o = c.propagation.steps > 0 ? fixed(c.propagation.steps) : PropagatorOptions{};
  auto gap_at = [&](double w) {
    const auto sol = floquet_decompose(propagate_one_period(g.h, w, o).U, w, g.ref);
    return resolve_pair(sol, g.ref, {1, 0, 0}, {0, 1, 0}).gap;
  };
  // The scan excludes omega_d* itself, so its minimum is an independent
  // estimate of the gap at the anticrossing.
  double asym = 0, scan_min = 1e300;
  for (double d : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double up = gap_at(c.omega_d + d * c.J), down = gap_at(c.omega_d - d * c.J);
    asym = std::max(asym, std::abs(up - down));
    scan_min = std::min({scan_min, up, down});
  }
  for (int i = 1; i <= 8; ++i)
    scan_min = std::min({scan_min, gap_at(c.omega_d + i * c.J / 256), gap_at(c.omega_d - i * c.J / 256)});
  const double mismatch = std::abs(scan_min - 2 * c.J);
  const double mixing = std::abs(c.gap - 2 * c.pair.J);
  return {to_ghz(asym) < 1e-4 && to_ghz(mismatch) < 1e-4 && to_ghz(mixing) < 1e-4,
          format("max |gap(w*+d) - gap(w*-d)| %.2e GHz, |scanned min gap - 2J| %.2e GHz, "
                 "|gap - 2 J_mixing| %.2e GHz",
                 to_ghz(asym), to_ghz(mismatch), to_ghz(mixing))};
}

Verdict check_walsh_limit() {
  FloquetSettings s;
  s.policy = DrivePolicy::formula;
  s.propagator = fixed(128);
  std::vector<double> x, y;
  for (double d : {1e-3, 3e-3, 1e-2}) {
    const auto r = evaluate_point(toy_point(fixtures::fig2_toy(4.8, d), {5, 5, 5}), s,
                                  AnalysisMode{false, true});
    x.push_back(std::log(d));
    y.push_back(std::log(std::abs(r.chi_floquet - r.chi_static)));
  }
  const double mx = (x[0] + x[1] + x[2]) / 3, my = (y[0] + y[1] + y[2]) / 3;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 3; ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  const double slope = sxy / sxx;
  return {std::abs(slope - 2) <= 0.2, format("log-log slope %.4f", slope)};
}

ChiZeroCurve static_zero_scan(double alpha_c) {
  RunConfig cfg;
  cfg.base = toy_point(fixtures::chi_zero_toy(4.5, alpha_c), {5, 5, 5});
  cfg.axes = {{"omega_c", 4.1, 5.65, 32}};
  const auto rows = sweep(cfg, AnalysisMode{false, false});
  PointEvaluator refine = [&](double control, double) {
    ModelPoint p = cfg.base;
    apply_axis(p, "omega_c", control);
    return evaluate_point(p, cfg.floquet, AnalysisMode{false, false});
  };
  return chi_zero_curve(rows, ChiSource::static_walsh, refine);
}

Verdict check_chi_zero_rule() {
  const ChiZeroCurve ruled = static_zero_scan(0.1);
  bool located = !ruled.zeros.empty();
  std::string zeros;
  for (const auto& z : ruled.zeros) {
    // Independent check: the static value changes sign across the root.
    const auto at = [&](double wc) {
      return evaluate_point(toy_point(fixtures::chi_zero_toy(wc, 0.1), {5, 5, 5}), {},
                            AnalysisMode{false, false})
          .chi_static;
    };
    located = located && z.refined && at(z.control - 0.01) * at(z.control + 0.01) < 0;
    zeros += format(" %.4f", z.control);
  }
  std::string off;
  for (double a : {0.15, 0.05}) {
    off += format("; alpha_c %.2f:", a);
    const ChiZeroCurve c = static_zero_scan(a);
    for (const auto& z : c.zeros) {
      off += format(" %.4f", z.control);
      for (const auto& p : c.poles)
        if (std::abs(p.control - z.control) < 0.1) off += format(" (next to a pole at %.3f)", p.control);
    }
    if (c.zeros.empty()) off += " no zero";
  }
  return {located, format("alpha_c 0.10: zero(s) at omega_c =%s GHz, %d pole flip(s) skipped%s",
                          zeros.empty() ? " none" : zeros.c_str(),
                          static_cast<int>(std::count_if(ruled.notes.begin(), ruled.notes.end(),
                                                         [](const std::string& n) {
                                                           return n.find("pole") != std::string::npos;
                                                         })),
                          off.c_str())};
}

// One formula-drive Floquet solve of the circuit with the tracking details
// the structural checks need.
struct CircuitProbe {
  double bar = 0, depth = 0;
  double J = kNaN, chi = kNaN;
  double omega_a = 0, omega_b = 0, omega_c = 0;  // undriven transition frequencies, GHz
  double min_overlap = 0;  // over 000, 001, 110 and the pair's subspace weight
  double two_excited = 1;  // over 200, 020, 002, 101, 011; reported, not judged
  bool excluded = false;
};

CircuitProbe probe_circuit(double bar, double depth) {
  ModelPoint pt;
  pt.model = fixtures::fig3_circuit();
  pt.layout = FockLayout({6, 6, 6});
  pt.drive = fixtures::flux_drive(bar, depth);
  CircuitProbe out;
  out.bar = bar;
  out.depth = depth;
  const StaticReference undriven = static_eigensolve(build_undriven(pt).static_part);
  const double e0 = undriven.energy({0, 0, 0});
  out.omega_a = to_ghz(undriven.energy({1, 0, 0}) - e0);
  out.omega_b = to_ghz(undriven.energy({0, 1, 0}) - e0);
  out.omega_c = to_ghz(undriven.energy({0, 0, 1}) - e0);

  const HarmonicHamiltonian h = build_hamiltonian(pt);
  const StaticReference ref = static_eigensolve(h.static_part);
  const double w = std::abs(ref.energy({0, 1, 0}) - ref.energy({1, 0, 0}));
  const FloquetSolution sol = floquet_decompose(propagate_one_period(h, w, fixed(128)).U, w, ref);
  const PairResolution pair = resolve_pair(sol, ref, {1, 0, 0}, {0, 1, 0});
  const WalshResult walsh = walsh_cross_kerr(sol, ref);
  out.excluded = !pair.tracked || !walsh.tracked;
  if (pair.tracked) out.J = to_ghz(pair.J);
  if (walsh.tracked) out.chi = to_ghz(walsh.chi);
  out.min_overlap = pair.tracked ? pair.weight : 0;
  for (const Label& l : {Label{0, 0, 0}, Label{0, 0, 1}, Label{1, 1, 0}})
    out.min_overlap = std::min(out.min_overlap, sol.tracked(l) ? sol.info(l).overlap : 0.0);
  for (const Label& l : {Label{2, 0, 0}, Label{0, 2, 0}, Label{0, 0, 2}, Label{1, 0, 1}, Label{0, 1, 1}})
    out.two_excited = std::min(out.two_excited, sol.labels.count(l) ? sol.info(l).overlap : 0.0);
  return out;
}

constexpr double kHybridized = 0.9;

bool near_resonance(const CircuitProbe& p) {
  return std::min(std::abs(p.omega_c - p.omega_a), std::abs(p.omega_c - p.omega_b)) < 0.25;
}

bool explained(const CircuitProbe& p) {
  return p.excluded || near_resonance(p) || p.min_overlap < kHybridized;
}

struct CircuitSweep {
  std::vector<double> bars, depths{0.01, 0.02, 0.03};
  std::vector<std::vector<CircuitProbe>> probes;  // [depth][bar]
};

const CircuitSweep& circuit_sweep() {
  static const CircuitSweep s = [] {
    CircuitSweep s;
    for (int i = 0; i <= 10; ++i) s.bars.push_back(0.25 + 0.02 * i);
    for (double d : s.depths) {
      s.probes.emplace_back();
      for (double b : s.bars) s.probes.back().push_back(probe_circuit(b, d));
    }
    return s;
  }();
  return s;
}

Verdict check_circuit_structure() {
  const CircuitSweep& s = circuit_sweep();
  int monotone = 0, excused = 0, unexplained = 0;
  std::string odd;
  for (std::size_t i = 0; i < s.bars.size(); ++i) {
    const CircuitProbe &p1 = s.probes[0][i], &p2 = s.probes[1][i], &p3 = s.probes[2][i];
    const bool ok = !p1.excluded && !p2.excluded && !p3.excluded && std::abs(p1.J) < std::abs(p2.J) &&
                    std::abs(p2.J) < std::abs(p3.J) && std::abs(p3.J) < 0.1;
    if (ok) {
      ++monotone;
    } else if (explained(p1) || explained(p2) || explained(p3)) {
      ++excused;
    } else {
      ++unexplained;
      odd += format(" %.2f", s.bars[i]);
    }
  }

  // Drive-induced hybridization windows at the deepest modulation.
  // Two-excitation labels are reported alongside: their lines need a populated
  // excited state and do not show in a spectrum taken from 000.
  struct Window {
    double deepest = 1, where = 0, two = 1, two_where = 0;
  };
  auto window = [](double lo, double hi, Window& w) {
    for (int i = 0; lo + 0.005 * i <= hi + 1e-9; ++i) {
      const CircuitProbe p = probe_circuit(lo + 0.005 * i, 0.03);
      if (p.min_overlap < w.deepest) w.deepest = p.min_overlap, w.where = p.bar;
      if (p.two_excited < w.two) w.two = p.two_excited, w.two_where = p.bar;
    }
    return w.deepest < kHybridized;
  };
  Window lw, uw;
  const bool lower = window(0.10, 0.16, lw);
  const bool upper = window(0.39, 0.45, uw);
  return {unexplained == 0 && lower && upper,
          format("(a) %d/%d flux points with |J| rising in depth, %d at resonances or crossings, "
                 "%d unexplained%s; (b) lowest overlap %.3f at %.3f in [0.10,0.16], %.3f at %.3f in "
                 "[0.39,0.45] (threshold %.1f); two-excitation labels %.3f at %.3f and %.3f at %.3f",
                 monotone, static_cast<int>(s.bars.size()), excused, unexplained, odd.c_str(), lw.deepest,
                 lw.where, uw.deepest, uw.where, kHybridized, lw.two, lw.two_where, uw.two, uw.two_where)};
}

Verdict check_headline() {
  const CircuitSweep& s = circuit_sweep();
  std::string found;
  bool pass = false;
  for (std::size_t d = 0; d < s.depths.size(); ++d) {
    std::vector<GateReport> rows;
    for (const CircuitProbe& p : s.probes[d]) {
      GateReport r;
      r.key = {p.bar, p.depth};
      r.J_floquet = p.J;
      r.chi_floquet = p.chi;
      rows.push_back(r);
    }
    PointEvaluator refine = [](double bar, double depth) {
      const CircuitProbe p = probe_circuit(bar, depth);
      GateReport r;
      r.J_floquet = p.J;
      r.chi_floquet = p.chi;
      return r;
    };
    for (const ChiZero& z : chi_zero_curve(rows, ChiSource::floquet, refine).zeros) {
      found += format(" (%.2f, %.3f: J %.1f MHz)", s.depths[d], z.control, 1e3 * std::abs(z.J));
      pass = pass || std::abs(z.J) >= 0.010;
    }
  }
  return {pass, "chi zeros (depth, flux: J):" + (found.empty() ? std::string(" none") : found)};
}

Verdict check_property_suites() {
  struct Suite {
    const char* name;
    properties::Outcome (*run)(unsigned);
    unsigned seed;
    double tol;
  };
  const Suite suites[] = {{"unitarity", properties::unitarity, 1, 1e-9},
                          {"hermiticity", properties::hermiticity, 2, 1e-12},
                          {"canonical", properties::canonical, 3, 1e-10},
                          {"fold", properties::fold_invariance, 4, 1e-12},
                          {"ladder", properties::ladder_spacing, 5, 1e-12}};
  bool pass = true;
  std::string detail;
  for (const Suite& s : suites) {
    const auto o = s.run(s.seed);
    pass = pass && o.cases == properties::kCases && o.worst < s.tol;
    detail += format("%s%s %.1e/%d", detail.empty() ? "" : ", ", s.name, o.worst, o.cases);
  }
  return {pass, detail};
}

// The time-domain reference runs at the step size the adaptive Floquet solve
// converged to; its cost is measured over a few periods and scaled to 500.
Verdict check_performance() {
  const ToyParams t = fixtures::fig2_toy(4.5, 0.3);
  const HarmonicHamiltonian h = build_toy_hamiltonian(t, FockLayout({10, 10, 10}));
  const StaticReference ref = static_eigensolve(h.static_part);
  const double w = ref.energy({0, 1, 0}) - ref.energy({1, 0, 0});

  PropagatorOptions o;
  o.tol = 1e-6;
  o.initial_steps = 64;
  o.grid_points = 0;
  const auto t0 = std::chrono::steady_clock::now();
  const Propagation prop = propagate_one_period(h, w, o);
  const FloquetSolution sol = floquet_decompose(prop.U, w, ref);
  const double floquet = seconds_since(t0);

  constexpr int kMeasured = 1, kGate = 500;
  const auto t1 = std::chrono::steady_clock::now();
  const Eigen::MatrixXcd u = simulate_time_domain(h, w, kMeasured, prop.steps);
  const double per_period = seconds_since(t1) / kMeasured;
  const double ratio = kGate * per_period / floquet;
  return {ratio >= 100 && sol.tracked({1, 0, 0}),
          format("dim %d, %d steps/period, Floquet solve %.1f s, time domain %.1f s/period "
                 "(500 periods ~ %.0f s), ratio %.0f",
                 static_cast<int>(ref.energies.size()), prop.steps, floquet, per_period,
                 kGate * per_period, ratio)};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int errors = 0;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& check) {
    if (!only.empty() && !only.count(id)) return;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Verdict v = check();
      std::printf("%s %2d %s: %s [%.0f s]\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(),
                  seconds_since(t0));
    } catch (const std::exception& e) {
      ++errors;
      std::printf("FAIL %2d %s: error: %s\n", id, name, e.what());
    }
    std::fflush(stdout);
  };

  report(1, "static cross-Kerr vs exact", check_static_cross_kerr);
  report(2, "gate rate vs Bessel", check_gate_rate);
  std::optional<GoldenRun> golden;
  auto with_golden = [&](Verdict (*f)(const GoldenRun&)) {
    return [&, f] {
      if (!golden) golden = golden_run();
      return f(*golden);
    };
  };
  report(3, "Rabi cross-check", with_golden(check_rabi));
  report(4, "anticrossing equals 2J", with_golden(check_anticrossing));
  report(5, "Walsh static limit", check_walsh_limit);
  report(6, "chi-zero rule", check_chi_zero_rule);
  report(7, "circuit structure", check_circuit_structure);
  report(8, "headline magnitudes", check_headline);
  report(9, "property suites", check_property_suites);
  report(10, "Floquet vs time domain", check_performance);
  return errors == 0 ? 0 : 1;
}
