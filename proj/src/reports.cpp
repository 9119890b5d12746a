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

#include "paragate/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include <json.hpp>
#include <omp.h>

#include "paragate/analytics.hpp"
#include "paragate/linalg.hpp"
#include "paragate/normal_modes.hpp"

namespace paragate {

HarmonicHamiltonian build_hamiltonian(const ModelPoint& point) {
  HarmonicHamiltonian h =
      point.is_toy()
          ? build_toy_hamiltonian(std::get<ToyParams>(point.model), point.layout)
          : build_circuit_hamiltonian(std::get<CircuitParams>(point.model), point.drive,
                                      point.layout, point.build);
  return point.rwa ? rwa_strip(h) : h;
}

HarmonicHamiltonian build_undriven(const ModelPoint& point) {
  ModelPoint still = point;
  if (auto* t = std::get_if<ToyParams>(&still.model)) t->delta = 0;
  else still.drive.delta_phi = 0;
  return build_hamiltonian(still);
}

OperatorMatrix probe_operator(const ModelPoint& point, std::size_t mode) {
  if (point.is_toy()) {
    OperatorMatrix a = annihilator(point.layout, mode);
    a.m = cplx(0, -1.0 / std::sqrt(2.0)) * (a.m - a.m.adjoint()).eval();
    a.kind = OperatorKind::observable;
    return a;
  }
  const auto& params = std::get<CircuitParams>(point.model);
  const EtaSolution eta = solve_eta(params, point.drive, point.build.displace);
  const double e[3] = {eta.eta_a, eta.eta_b, eta.eta_c};
  return bare_charge_operator(point.layout, mode, e[mode]);
}

Label qubit_label(const FockLayout& layout, int na, int nb) {
  Label l(layout.modes(), 0);
  l[0] = na;
  if (l.size() > 1) l[1] = nb;
  return l;
}

double select_drive_frequency(const ModelPoint& point, const FloquetSettings& settings,
                              const HarmonicHamiltonian& h, const StaticReference& ref) {
  const double splitting = std::abs(ref.energy(settings.second) - ref.energy(settings.first));
  switch (settings.policy) {
    case DrivePolicy::fixed: return point.drive.omega_d;
    case DrivePolicy::formula: return splitting;
    case DrivePolicy::calibrate: break;
  }
  CalibrationOptions opt;
  opt.method = settings.method;
  opt.propagator = settings.propagator;
  opt.propagator.grid_points = 0;
  opt.threshold = settings.threshold;
  return calibrate_drive_frequency(h, ref, splitting, settings.first, settings.second, opt).omega_d;
}

double gate_amplitude(const FloquetSolution& solution, const StaticReference& ref,
                      const Label& first, const Label& second) {
  const PairResolution p = resolve_pair(solution, ref, first, second);
  return p.tracked ? 0.5 * p.gap : kNaN;
}

double dynamical_cross_kerr(const FloquetSolution& solution, const StaticReference& ref) {
  const WalshResult w = walsh_cross_kerr(solution, ref);
  return w.tracked ? w.chi : kNaN;
}

double static_cross_kerr(const StaticReference& ref) {
  const FockLayout& l = ref.layout;
  return ref.energy(qubit_label(l, 1, 1)) - ref.energy(qubit_label(l, 1, 0)) -
         ref.energy(qubit_label(l, 0, 1)) + ref.energy(qubit_label(l, 0, 0));
}

std::vector<SpectroscopyPoint> two_tone_spectrum(const FloquetSolution& solution,
                                                 const Propagation& propagation,
                                                 const OperatorMatrix& probe,
                                                 const std::vector<Label>& labels, int k_min,
                                                 int k_max) {
  if (propagation.grid.empty()) throw std::logic_error("propagator grid was not retained");
  const std::size_t g = propagation.grid.size();
  const Eigen::Index nl = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXcd phi0(solution.modes_t0.rows(), nl);
  Eigen::VectorXd eps(nl);
  for (Eigen::Index j = 0; j < nl; ++j) {
    const Eigen::Index m = solution.info(labels[j]).mode;
    phi0.col(j) = solution.modes_t0.col(m);
    eps(j) = solution.unfolded(m);
  }

  // elements[i](beta, alpha) = <phi_beta(t_i)|X|phi_alpha(t_i)>
  std::vector<Eigen::MatrixXcd> elements(g);
  for (std::size_t i = 0; i < g; ++i) {
    const double t = propagation.period * static_cast<double>(i) / static_cast<double>(g);
    Eigen::MatrixXcd phi = propagation.grid[i] * phi0;
    for (Eigen::Index j = 0; j < nl; ++j) phi.col(j) *= std::exp(cplx(0, eps(j) * t));
    elements[i] = phi.adjoint() * probe.m * phi;
  }

  std::vector<SpectroscopyPoint> out;
  for (Eigen::Index a = 0; a < nl; ++a)
    for (Eigen::Index b = 0; b < nl; ++b) {
      if (a == b) continue;
      const bool excluded = !solution.tracked(labels[a]) || !solution.tracked(labels[b]);
      for (int k = k_min; k <= k_max; ++k) {
        cplx x = 0;
        for (std::size_t i = 0; i < g; ++i)
          x += std::polar(1.0, kTwoPi * k * static_cast<double>(i) / static_cast<double>(g)) *
               elements[i](b, a);
        x /= static_cast<double>(g);
        SpectroscopyPoint p;
        p.delta = eps(a) - eps(b) + k * solution.omega_d;
        p.weight = std::abs(x);
        p.alpha = labels[a];
        p.beta = labels[b];
        p.k = k;
        p.excluded = excluded;
        out.push_back(std::move(p));
      }
    }
  return out;
}

namespace {

void add_analytics(const ModelPoint& point, double den_tol, double omega_d, GateReport& r) {
  if (const auto* toy = std::get_if<ToyParams>(&point.model)) {
    const NormalModeBasis basis = toy_basis(*toy);
    const EffectiveCouplings first = toy_first_order(basis, *toy);
    const SecondOrderChi second = toy_second_order_chi(basis, *toy, den_tol);
    r.J1 = to_ghz(first.J_ab);
    r.chi1 = to_ghz(first.chi_ab);
    if (second.dressed_divergent) r.flags.push_back("pole");
    else r.chi2 = to_ghz(first.chi_ab + second.dressed_denominators);
    if (!(omega_d > 0))
      omega_d = std::abs(basis.frequencies[1] - basis.frequencies[0]);
    if (omega_d > 0) r.J2_bessel = to_ghz(toy_bessel_gate_rate(basis, *toy, omega_d));
    return;
  }
  const auto& params = std::get<CircuitParams>(point.model);
  const NormalModeBasis basis = drive_dependent_basis(params, point.drive, point.build.displace);
  const CouplerPhases phases = coupler_phases(params, point.drive, point.build.displace);
  const EffectiveCouplings first = circuit_first_order(basis, params, point.drive, phases);
  r.J1 = to_ghz(first.J_ab);
  r.chi1 = to_ghz(first.chi_ab);
}

void add_floquet(const ModelPoint& point, const FloquetSettings& settings,
                 const StaticReference& undriven, GateReport& r) {
  const HarmonicHamiltonian h = build_hamiltonian(point);
  const StaticReference ref = static_eigensolve(h.static_part);
  const Label& l1 = settings.first;
  const Label& l2 = settings.second;

  FloquetSolution sol;
  PairResolution pair;
  double omega = 0;
  if (settings.policy == DrivePolicy::calibrate) {
    CalibrationOptions opt;
    opt.method = settings.method;
    opt.propagator = settings.propagator;
    opt.propagator.grid_points = 0;
    opt.threshold = settings.threshold;
    const double guess = std::abs(ref.energy(l2) - ref.energy(l1));
    Calibration cal = calibrate_drive_frequency(h, ref, guess, l1, l2, opt);
    r.floquet_solves += cal.solves;
    omega = cal.omega_d;
    r.J_floquet = to_ghz(cal.J);
    pair = cal.pair;
    sol = std::move(cal.solution);
  } else {
    omega = settings.policy == DrivePolicy::formula ? std::abs(ref.energy(l2) - ref.energy(l1))
                                                    : point.drive.omega_d;
    PropagatorOptions opt = settings.propagator;
    opt.grid_points = 0;
    const Propagation prop = propagate_one_period(h, omega, opt);
    ++r.floquet_solves;
    sol = floquet_decompose(prop.U, omega, ref, settings.threshold);
    pair = resolve_pair(sol, ref, l1, l2);
    if (pair.tracked) r.J_floquet = to_ghz(pair.J);
  }
  r.omega_d_star = to_ghz(omega);
  if (pair.tracked) r.gap = to_ghz(pair.gap);
  else r.flags.push_back("pair-untracked");

  const WalshResult walsh = walsh_cross_kerr(sol, ref);
  if (walsh.tracked) r.chi_floquet = to_ghz(walsh.chi);
  else r.flags.push_back("walsh-untracked");
  r.excluded = !pair.tracked || !walsh.tracked;

  const FockLayout& layout = point.layout;
  if (pair.tracked) {
    r.stark[to_string(l1)] = to_ghz(pair.level_first - undriven.energy(l1));
    r.stark[to_string(l2)] = to_ghz(pair.level_second - undriven.energy(l2));
  }
  for (const Label& l : {qubit_label(layout, 0, 0), qubit_label(layout, 1, 1), Label{0, 0, 1}}) {
    if (l.size() != layout.modes() || r.stark.count(to_string(l))) continue;
    if (sol.tracked(l)) r.stark[to_string(l)] = to_ghz(sol.energy(l) - undriven.energy(l));
  }
}

}  // namespace

GateReport evaluate_point(const ModelPoint& point, const FloquetSettings& settings,
                          const AnalysisMode& mode, double den_tol) {
  GateReport r;
  const StaticReference undriven = static_eigensolve(build_undriven(point).static_part);
  r.chi_static = to_ghz(static_cross_kerr(undriven));
  if (mode.floquet) add_floquet(point, settings, undriven, r);
  if (mode.analytic) add_analytics(point, den_tol, to_angular(r.omega_d_star), r);
  return r;
}

std::vector<std::vector<double>> sweep_grid(const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<double>> grid{{}};
  for (const SweepAxis& axis : axes) {
    std::vector<std::vector<double>> next;
    for (double v : axis.values())
      for (const auto& key : grid) {
        auto k = key;
        k.push_back(v);
        next.push_back(std::move(k));
      }
    grid = std::move(next);
  }
  // Built with the last axis fastest; flip so the first axis varies fastest.
  if (axes.size() == 2) {
    std::stable_sort(grid.begin(), grid.end(), [](const auto& x, const auto& y) {
      return std::tie(x[1], x[0]) < std::tie(y[1], y[0]);
    });
  }
  return grid;
}

ModelPoint point_at(const RunConfig& cfg, const std::vector<double>& key) {
  ModelPoint p = cfg.base;
  for (std::size_t i = 0; i < key.size(); ++i) apply_axis(p, cfg.axes.at(i).name, key[i]);
  return p;
}

namespace {

GateReport guarded_point(const RunConfig& cfg, const std::vector<double>& key,
                         const AnalysisMode& mode) {
  try {
    GateReport r = evaluate_point(point_at(cfg, key), cfg.floquet, mode, cfg.den_tol);
    r.key = key;
    return r;
  } catch (const std::exception& e) {
    GateReport r;
    r.key = key;
    r.excluded = true;
    r.flags.push_back(std::string("error: ") + e.what());
    return r;
  }
}

}  // namespace

std::vector<GateReport> sweep(const RunConfig& cfg, const AnalysisMode& mode, int threads) {
  const auto grid = sweep_grid(cfg.axes);
  std::vector<GateReport> rows(grid.size());
  const int n = static_cast<int>(grid.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
  {
    linalg::set_blas_threads(1);
#pragma omp for schedule(dynamic, 1)
    for (int i = 0; i < n; ++i) rows[i] = guarded_point(cfg, grid[i], mode);
  }
  return rows;
}

std::vector<GateReport> sweep_serial(const RunConfig& cfg, const AnalysisMode& mode) {
  const auto grid = sweep_grid(cfg.axes);
  std::vector<GateReport> rows;
  rows.reserve(grid.size());
  for (const auto& key : grid) rows.push_back(guarded_point(cfg, key, mode));
  return rows;
}

double chi_of(const GateReport& r, ChiSource source) {
  switch (source) {
    case ChiSource::floquet: return r.chi_floquet;
    case ChiSource::static_walsh: return r.chi_static;
    case ChiSource::analytic: return std::isfinite(r.chi2) ? r.chi2 : r.chi1;
  }
  return kNaN;
}

double gate_of(const GateReport& r) {
  if (std::isfinite(r.J_floquet)) return r.J_floquet;
  return std::isfinite(r.J2_bessel) ? r.J2_bessel : r.J1;
}

namespace {

struct Slice {
  double value = 0;
  std::vector<const GateReport*> rows;  // sorted by control
};

std::vector<Slice> slices_of(const std::vector<GateReport>& table) {
  std::map<double, Slice> by;
  for (const auto& r : table) {
    if (r.key.empty()) continue;
    const double s = r.key.size() > 1 ? r.key[1] : 0.0;
    by[s].value = s;
    by[s].rows.push_back(&r);
  }
  std::vector<Slice> out;
  for (auto& [s, slice] : by) {
    std::sort(slice.rows.begin(), slice.rows.end(),
              [](auto* x, auto* y) { return x->key[0] < y->key[0]; });
    out.push_back(std::move(slice));
  }
  return out;
}

double interpolate(double x0, double y0, double x1, double y1) {
  return x0 - y0 * (x1 - x0) / (y1 - y0);
}

// chi of a slice at control c by linear interpolation; NaN outside the data.
double chi_at(const Slice& s, double c, ChiSource source) {
  for (std::size_t i = 0; i + 1 < s.rows.size(); ++i) {
    const double c0 = s.rows[i]->key[0], c1 = s.rows[i + 1]->key[0];
    if (c < c0 || c > c1) continue;
    const double y0 = chi_of(*s.rows[i], source), y1 = chi_of(*s.rows[i + 1], source);
    return c1 == c0 ? y0 : y0 + (y1 - y0) * (c - c0) / (c1 - c0);
  }
  return kNaN;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

ChiZeroCurve chi_zero_curve(const std::vector<GateReport>& table, ChiSource source,
                            const PointEvaluator& refine, double sweet_tol) {
  ChiZeroCurve curve;
  const std::vector<Slice> slices = slices_of(table);
  std::vector<std::vector<ChiZero>> per_slice(slices.size());

  for (std::size_t si = 0; si < slices.size(); ++si) {
    const Slice& s = slices[si];
    std::vector<const GateReport*> rows;
    for (const GateReport* r : s.rows)
      if (std::isfinite(chi_of(*r, source))) rows.push_back(r);
    auto y = [&](std::size_t i) { return chi_of(*rows[i], source); };
    int region = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0 && (y(i - 1) == 0 || y(i - 1) * y(i) < 0)) {
        const double c0 = rows[i - 1]->key[0], y0 = y(i - 1);
        const double c1 = rows[i]->key[0], y1 = y(i);
        // A sign change through a pole has |chi| growing into the bracket
        // from both sides.
        const bool rises_left = i < 2 || std::abs(y0) > std::abs(y(i - 2));
        const bool rises_right = i + 1 >= rows.size() || std::abs(y1) > std::abs(y(i + 1));
        bool pole = y0 != 0 && rises_left && rises_right && (i >= 2 || i + 1 < rows.size());
        ChiZero z;
        z.slice = s.value;
        z.control = y0 == 0 ? c0 : interpolate(c0, y0, c1, y1);
        const double j0 = gate_of(*rows[i - 1]), j1 = gate_of(*rows[i]);
        const double f = c1 == c0 ? 0 : (z.control - c0) / (c1 - c0);
        z.J = j0 + f * (j1 - j0);
        if (refine && y0 != 0 && !pole) {
          double lo = c0, ylo = y0, hi = c1, yhi = y1;
          for (int it = 0; it < 2; ++it) {
            const GateReport g = refine(z.control, s.value);
            const double yc = chi_of(g, source);
            if (!std::isfinite(yc)) break;
            if (std::abs(yc) > std::max(std::abs(ylo), std::abs(yhi))) {
              pole = true;
              break;
            }
            z.refined = true;
            z.chi_residual = yc;
            if (std::isfinite(gate_of(g))) z.J = gate_of(g);
            if (yc == 0) break;
            if ((yc < 0) == (ylo < 0)) lo = z.control, ylo = yc;
            else hi = z.control, yhi = yc;
            z.control = interpolate(lo, ylo, hi, yhi);
          }
        }
        if (pole) {
          curve.poles.push_back(z);
          curve.notes.push_back("slice " + fmt(s.value) + ": sign change through a pole near " +
                                fmt(z.control) + ", skipped");
        } else {
          per_slice[si].push_back(z);
          ++region;
        }
      }
      curve.traces.push_back({s.value, region, rows[i]->key[0], y(i), gate_of(*rows[i])});
    }
    if (per_slice[si].empty())
      curve.notes.push_back("slice " + fmt(s.value) + ": no sign change of chi, omitted");
  }

  for (std::size_t si = 0; si < slices.size(); ++si)
    for (ChiZero z : per_slice[si]) {
      const Slice* lo = si > 0 ? &slices[si - 1] : nullptr;
      const Slice* hi = si + 1 < slices.size() ? &slices[si + 1] : nullptr;
      const double ylo = lo ? chi_at(*lo, z.control, source) : kNaN;
      const double yhi = hi ? chi_at(*hi, z.control, source) : kNaN;
      if (std::isfinite(ylo) && std::isfinite(yhi)) z.dchi_dslice = (yhi - ylo) / (hi->value - lo->value);
      else if (std::isfinite(yhi)) z.dchi_dslice = yhi / (hi->value - z.slice);
      else if (std::isfinite(ylo)) z.dchi_dslice = -ylo / (z.slice - lo->value);
      z.sweet_spot = std::isfinite(z.dchi_dslice) && std::abs(z.dchi_dslice) < sweet_tol;
      curve.zeros.push_back(z);
    }
  return curve;
}

namespace {

void put(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  out << buf;
}

const char* const kStarkLabels[] = {"000", "100", "010", "001", "110"};

}  // namespace

void write_reports_csv(std::ostream& out, const std::vector<SweepAxis>& axes,
                       const std::vector<GateReport>& rows) {
  for (const auto& a : axes) out << a.name << ',';
  out << "J1,J2_bessel,chi1,chi2,J_floquet,chi_floquet,chi_static,omega_d_star,gap";
  for (const char* l : kStarkLabels) out << ",stark_" << l;
  out << ",excluded,flags\n";
  for (const auto& r : rows) {
    for (double k : r.key) {
      put(out, k);
      out << ',';
    }
    for (double v : {r.J1, r.J2_bessel, r.chi1, r.chi2, r.J_floquet, r.chi_floquet, r.chi_static,
                     r.omega_d_star, r.gap}) {
      put(out, v);
      out << ',';
    }
    for (const char* l : kStarkLabels) {
      auto it = r.stark.find(l);
      put(out, it == r.stark.end() ? kNaN : it->second);
      out << ',';
    }
    out << (r.excluded ? 1 : 0) << ',';
    std::string flags;
    for (const auto& f : r.flags) flags += (flags.empty() ? "" : ";") + f;
    std::replace(flags.begin(), flags.end(), ',', ' ');
    std::replace(flags.begin(), flags.end(), '\n', ' ');
    out << flags << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::vector<std::string>& key_names,
                        const std::vector<double>& key,
                        const std::vector<SpectroscopyPoint>& points, bool header) {
  if (header) {
    for (const auto& n : key_names) out << n << ',';
    out << "alpha,beta,k,delta,weight,excluded\n";
  }
  for (const auto& p : points) {
    for (double k : key) {
      put(out, k);
      out << ',';
    }
    out << to_string(p.alpha) << ',' << to_string(p.beta) << ',' << p.k << ',';
    put(out, to_ghz(p.delta));
    out << ',';
    put(out, p.weight);
    out << ',' << (p.excluded ? 1 : 0) << '\n';
  }
}

void write_chi_zero_csv(std::ostream& out, const ChiZeroCurve& curve) {
  out << "slice,control,J,chi_residual,dchi_dslice,refined,sweet_spot\n";
  for (const auto& z : curve.zeros) {
    for (double v : {z.slice, z.control, z.J, z.chi_residual, z.dchi_dslice}) {
      put(out, v);
      out << ',';
    }
    out << (z.refined ? 1 : 0) << ',' << (z.sweet_spot ? 1 : 0) << '\n';
  }
}

void write_metadata(std::ostream& out, const RunConfig& cfg, const std::string& command,
                    double seconds, const std::map<std::string, std::string>& extra) {
  nlohmann::json j;
  j["tool"] = "paragate";
  j["version"] = PARAGATE_VERSION;
  j["command"] = command;
  j["seconds"] = seconds;
  j["threads"] = omp_get_max_threads();
  j["config"] = nlohmann::json::parse(cfg.source.empty() ? "{}" : cfg.source);
  for (const auto& [k, v] : extra) j["notes"][k] = v;
  out << j.dump(2) << '\n';
}

}  // namespace paragate
