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


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fixtures.hpp"
#include "paragate/analytics.hpp"
#include "paragate/reports.hpp"

using namespace paragate;

namespace {

ModelPoint toy_point(const ToyParams& t, std::vector<int> dims = {3, 3, 3}) {
  ModelPoint p;
  p.model = t;
  p.layout = FockLayout(std::move(dims));
  return p;
}

FloquetSettings quick(DrivePolicy policy, int steps = 128) {
  FloquetSettings s;
  s.policy = policy;
  s.method = CalibrationMethod::two_level;
  s.propagator.adaptive = false;
  s.propagator.initial_steps = steps;
  s.propagator.grid_points = 0;
  return s;
}

RunConfig toy_sweep() {
  RunConfig cfg;
  cfg.base = toy_point(fixtures::fig2_toy(4.5, 0.2));
  cfg.floquet = quick(DrivePolicy::formula, 32);
  cfg.axes = {{"omega_c", 4.3, 5.1, 3}, {"delta", 0.1, 0.2, 2}};
  return cfg;
}

}  // namespace

TEST_CASE("undriven cross-Kerr from the Floquet path equals the static value") {
  const auto r = evaluate_point(toy_point(fixtures::fig2_toy(4.8)), quick(DrivePolicy::formula, 8),
                                AnalysisMode{false, true});
  CHECK(std::abs(r.chi_floquet - r.chi_static) < to_ghz(1e-10));
  CHECK(std::abs(r.J_floquet) < 1e-12);
}

TEST_CASE("uncoupled oscillators") {
  ToyParams t = fixtures::fig2_toy(4.8);
  t.g_ab = t.g_bc = 0;
  const ModelPoint p = toy_point(t);
  const auto r = evaluate_point(p, quick(DrivePolicy::formula, 8), AnalysisMode{true, true});
  CHECK(std::abs(r.chi_floquet) < 1e-12);
  CHECK(std::abs(r.chi_static) < 1e-12);
  CHECK(std::abs(r.J_floquet) < 1e-12);
  CHECK(r.J1 == 0);

  const auto h = build_hamiltonian(p);
  const auto ref = static_eigensolve(h.static_part);
  const double w = to_angular(1.5);
  const auto sol = floquet_decompose(propagate_one_period(h, w, quick(DrivePolicy::fixed, 8).propagator).U, w, ref);
  CHECK(std::abs(gate_amplitude(sol, ref, {1, 0, 0}, {0, 1, 0}) -
                 std::abs(ref.energy({0, 1, 0}) - ref.energy({1, 0, 0}) - w) / 2) < 1e-9);
}

TEST_CASE("gate amplitude is symmetric and gauge invariant") {
  const ModelPoint p = toy_point(fixtures::fig2_toy(4.5, 0.3));
  const auto h = build_hamiltonian(p);
  const auto ref = static_eigensolve(h.static_part);
  const double w = ref.energy({0, 1, 0}) - ref.energy({1, 0, 0});
  const PropagatorOptions opt = quick(DrivePolicy::fixed).propagator;
  const auto sol = floquet_decompose(propagate_one_period(h, w, opt).U, w, ref);
  const double j = gate_amplitude(sol, ref, {1, 0, 0}, {0, 1, 0});
  CHECK(j == doctest::Approx(gate_amplitude(sol, ref, {0, 1, 0}, {1, 0, 0})).epsilon(1e-12));

  const auto shifted = h.shifted(to_angular(0.37));
  const auto ref2 = static_eigensolve(shifted.static_part);
  const auto sol2 = floquet_decompose(propagate_one_period(shifted, w, opt).U, w, ref2);
  CHECK(gate_amplitude(sol2, ref2, {1, 0, 0}, {0, 1, 0}) == doctest::Approx(j).epsilon(1e-8));
  CHECK(dynamical_cross_kerr(sol2, ref2) == doctest::Approx(dynamical_cross_kerr(sol, ref)).epsilon(1e-8));
}

TEST_CASE("Floquet gate rate against the Bessel formula") {
  const ModelPoint p = toy_point(fixtures::fig2_toy(4.25, 0.3), {5, 5, 5});
  const auto r = evaluate_point(p, quick(DrivePolicy::calibrate), AnalysisMode{true, true});
  REQUIRE(std::isfinite(r.J_floquet));
  CHECK(std::abs(r.J_floquet) == doctest::Approx(std::abs(r.J2_bessel)).epsilon(0.05));
  CHECK(r.floquet_solves >= 2);
  CHECK(r.stark.count("100"));
}

TEST_CASE("analytic columns") {
  const auto r = evaluate_point(toy_point(fixtures::fig2_toy(4.6, 0.1)), FloquetSettings{},
                                AnalysisMode{true, false});
  CHECK(std::isnan(r.J_floquet));
  CHECK(std::isfinite(r.J1));
  CHECK(std::isfinite(r.J2_bessel));
  CHECK(std::isfinite(r.chi2));
  CHECK(r.chi2 == doctest::Approx(r.chi_static).epsilon(0.1));

  // Scan for the two-photon resonance of the dressed denominators.
  ToyParams pole = fixtures::fig2_toy(4.6);
  double best = 1e300, best_wc = 0;
  for (double wc = 4.6; wc < 4.9; wc += 1e-4) {
    pole.omega_c = to_angular(wc);
    const double d = toy_second_order_chi(toy_basis(pole), pole).min_dressed_denominator;
    if (d < best) best = d, best_wc = wc;
  }
  REQUIRE(best < kDefaultDenTol);
  pole.omega_c = to_angular(best_wc);
  const auto rp = evaluate_point(toy_point(pole), FloquetSettings{}, AnalysisMode{true, false});
  CHECK(std::find(rp.flags.begin(), rp.flags.end(), "pole") != rp.flags.end());
  CHECK(std::isnan(rp.chi2));
}

TEST_CASE("spectroscopy of an undriven system") {
  const ModelPoint p = toy_point(fixtures::fig2_toy(4.8));
  const auto h = build_hamiltonian(p);
  const auto ref = static_eigensolve(h.static_part);
  const double w = to_angular(1.3);
  PropagatorOptions opt = quick(DrivePolicy::fixed, 32).propagator;
  opt.grid_points = 16;
  const auto prop = propagate_one_period(h, w, opt);
  const auto sol = floquet_decompose(prop.U, w, ref);
  const auto probe = probe_operator(p, 0);
  const std::vector<Label> labels{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  const auto pts = two_tone_spectrum(sol, prop, probe, labels, -3, 3);
  CHECK(pts.size() == 12 * 7);
  for (const auto& s : pts) {
    const Eigen::VectorXcd a = ref.vectors.col(ref.at(s.alpha)), b = ref.vectors.col(ref.at(s.beta));
    const double direct = std::abs(b.dot(probe.m * a));
    if (s.k == 0) CHECK(s.weight == doctest::Approx(direct).epsilon(1e-8));
    else CHECK(s.weight < 1e-9);
    CHECK(s.delta - s.k * w == doctest::Approx(ref.energy(s.alpha) - ref.energy(s.beta)).epsilon(1e-9));
  }
}

TEST_CASE("spectroscopy ladder spacing") {
  const ModelPoint p = toy_point(fixtures::fig2_toy(4.5, 0.3));
  const auto h = build_hamiltonian(p);
  const auto ref = static_eigensolve(h.static_part);
  const double w = to_angular(1.41);
  PropagatorOptions opt = quick(DrivePolicy::fixed, 64).propagator;
  opt.grid_points = 32;
  const auto prop = propagate_one_period(h, w, opt);
  const auto sol = floquet_decompose(prop.U, w, ref);
  const auto pts = two_tone_spectrum(sol, prop, probe_operator(p, 1), {{0, 0, 0}, {0, 1, 0}}, -4, 4);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i].alpha != pts[i + 1].alpha || pts[i].beta != pts[i + 1].beta) continue;
    CHECK(std::abs(pts[i + 1].delta - pts[i].delta - w) < 1e-12 * w * 10);
    CHECK(pts[i].weight >= 0);
  }
  CHECK_THROWS_AS(two_tone_spectrum(sol, propagate_one_period(h, w, quick(DrivePolicy::fixed, 8).propagator),
                                    probe_operator(p, 1), {{0, 0, 0}, {0, 1, 0}}, 0, 1),
                  std::logic_error);
}

TEST_CASE("sweep grid ordering") {
  const auto grid = sweep_grid({{"x", 0, 1, 2}, {"y", 5, 7, 3}});
  REQUIRE(grid.size() == 6);
  CHECK(grid[0] == std::vector<double>{0, 5});
  CHECK(grid[1] == std::vector<double>{1, 5});
  CHECK(grid[2] == std::vector<double>{0, 6});
  CHECK(sweep_grid({}).size() == 1);
}

TEST_CASE("single-point sweep equals a direct evaluation") {
  RunConfig cfg = toy_sweep();
  cfg.axes = {{"omega_c", 4.6, 4.6, 1}};
  const AnalysisMode mode{true, true};
  const auto rows = sweep(cfg, mode, 2);
  REQUIRE(rows.size() == 1);
  ModelPoint p = cfg.base;
  std::get<ToyParams>(p.model).omega_c = to_angular(4.6);
  const auto direct = evaluate_point(p, cfg.floquet, mode, cfg.den_tol);
  CHECK(rows[0].J_floquet == direct.J_floquet);
  CHECK(rows[0].chi_floquet == direct.chi_floquet);
  CHECK(rows[0].chi2 == direct.chi2);
}

TEST_CASE("parallel and serial sweeps agree regardless of grid order") {
  RunConfig cfg = toy_sweep();
  const AnalysisMode mode{true, true};
  const auto par = sweep(cfg, mode, 3);
  const auto ser = sweep_serial(cfg, mode);
  REQUIRE(par.size() == 6);
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].key == ser[i].key);
    CHECK(par[i].chi_floquet == ser[i].chi_floquet);
    CHECK(par[i].J_floquet == ser[i].J_floquet);
  }
  RunConfig flipped = cfg;
  std::swap(flipped.axes[0].start, flipped.axes[0].stop);
  auto rev = sweep(flipped, mode, 2);
  auto by_key = [](const GateReport& a, const GateReport& b) { return a.key < b.key; };
  auto sorted_par = par;
  std::sort(sorted_par.begin(), sorted_par.end(), by_key);
  std::sort(rev.begin(), rev.end(), by_key);
  for (std::size_t i = 0; i < rev.size(); ++i) {
    CHECK(rev[i].key == sorted_par[i].key);
    CHECK(rev[i].chi_floquet == sorted_par[i].chi_floquet);
  }
}

TEST_CASE("failing points become flagged rows") {
  RunConfig cfg = toy_sweep();
  cfg.floquet.first = {4, 0, 0};  // outside the truncation
  cfg.axes = {{"omega_c", 4.6, 4.6, 1}};
  const auto rows = sweep_serial(cfg, AnalysisMode{false, true});
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].excluded);
  REQUIRE_FALSE(rows[0].flags.empty());
  CHECK(rows[0].flags[0].rfind("error:", 0) == 0);
}

TEST_CASE("chi zero of the static slice") {
  RunConfig cfg;
  cfg.base = toy_point(fixtures::chi_zero_toy(4.5), {5, 5, 5});
  cfg.axes = {{"omega_c", 4.3, 5.5, 13}};
  const auto rows = sweep_serial(cfg, AnalysisMode{false, false});
  PointEvaluator refine = [&](double control, double) {
    ModelPoint p = cfg.base;
    apply_axis(p, "omega_c", control);
    return evaluate_point(p, cfg.floquet, AnalysisMode{false, false});
  };
  const auto curve = chi_zero_curve(rows, ChiSource::static_walsh, refine);
  // One genuine zero near 4.58 GHz; the flip across the pole near 4.82 GHz
  // must not be reported.
  REQUIRE(curve.zeros.size() == 1);
  CHECK(curve.zeros[0].control == doctest::Approx(4.58).epsilon(0.01));
  bool pole_noted = false;
  for (const auto& n : curve.notes) pole_noted |= n.find("pole") != std::string::npos;
  CHECK(pole_noted);
  REQUIRE(curve.poles.size() == 1);
  CHECK(curve.poles[0].control == doctest::Approx(4.82).epsilon(0.01));

  // Dense scan plus bisection on the exact static cross-Kerr.
  auto chi = [&](double wc) { return refine(wc, 0).chi_static; };
  for (const auto& z : curve.zeros) {
    const double step = 0.1;
    double lo = z.control - step, hi = z.control + step;
    REQUIRE(chi(lo) * chi(hi) < 0);
    for (int it = 0; it < 50; ++it) {
      const double mid = 0.5 * (lo + hi);
      (chi(mid) * chi(lo) > 0 ? lo : hi) = mid;
    }
    CHECK(z.refined);
    CHECK(z.control == doctest::Approx(lo).epsilon(1e-4));
    CHECK(std::abs(z.chi_residual) < 1e-9);
  }
}

TEST_CASE("chi zero bookkeeping on synthetic tables") {
  auto row = [](double c, double s, double chi, double j) {
    GateReport r;
    r.key = {c, s};
    r.chi_static = chi;
    r.J_floquet = j;
    return r;
  };
  std::vector<GateReport> table;
  for (double c : {0.0, 1.0, 2.0, 3.0}) {
    table.push_back(row(c, 0.0, c + 1.0, 1));          // monotone, no sign change
    table.push_back(row(c, 1.0, c - 1.5, 2 + c));      // root at 1.5
    table.push_back(row(c, 2.0, c - 1.5 + 1e-4, 3));   // almost the same root
  }
  const auto curve = chi_zero_curve(table, ChiSource::static_walsh);
  REQUIRE(curve.zeros.size() == 2);
  CHECK(curve.zeros[0].control == doctest::Approx(1.5));
  CHECK(curve.zeros[0].J == doctest::Approx(3.5));
  CHECK(curve.zeros[1].sweet_spot);
  CHECK_FALSE(curve.zeros[0].refined);
  REQUIRE(curve.notes.size() == 1);
  CHECK(curve.notes[0].find("slice 0") == 0);
  int regions = 0;
  for (const auto& t : curve.traces) regions = std::max(regions, t.region);
  CHECK(regions == 1);
}

TEST_CASE("report CSV layout") {
  std::ostringstream out;
  GateReport r;
  r.key = {4.5};
  r.J1 = 0.001;
  r.flags = {"pole", "note, with comma"};
  write_reports_csv(out, {{"omega_c", 4.5, 4.5, 1}}, {r});
  const std::string text = out.str();
  const std::string header = text.substr(0, text.find('\n'));
  CHECK(header.rfind("omega_c,J1,J2_bessel,chi1,chi2,J_floquet,chi_floquet,chi_static,", 0) == 0);
  CHECK(header.find(",excluded,flags") != std::string::npos);
  CHECK(text.find("pole;note  with comma") != std::string::npos);
  CHECK(std::count(header.begin(), header.end(), ',') ==
        std::count(text.begin() + text.find('\n') + 1, text.end(), ','));
}
