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

#include "paragate/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "paragate/linalg.hpp"

namespace paragate {

Label parse_label(std::string_view digits) {
  Label out;
  for (char ch : digits) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad label '" + std::string(digits) + "'");
    out.push_back(ch - '0');
  }
  if (out.empty()) throw std::invalid_argument("empty label");
  return out;
}

std::string to_string(const Label& label) {
  std::string s;
  for (int n : label) s += std::to_string(n);
  return s;
}

Eigen::Index StaticReference::at(const Label& label) const {
  auto it = index.find(label);
  if (it == index.end()) throw std::out_of_range("no static state labeled " + to_string(label));
  return it->second;
}

namespace {

struct Candidate {
  double overlap;
  double tie;  // smaller wins
  Eigen::Index row, col;
};

// One-to-one greedy matching of rows to columns by decreasing weight.
std::vector<Eigen::Index> greedy_match(const Eigen::MatrixXd& w, const Eigen::VectorXd& tie) {
  const Eigen::Index n = w.rows();
  std::vector<Candidate> all;
  all.reserve(static_cast<std::size_t>(n * w.cols()));
  for (Eigen::Index c = 0; c < w.cols(); ++c)
    for (Eigen::Index r = 0; r < n; ++r) all.push_back({w(r, c), tie(c), r, c});
  std::sort(all.begin(), all.end(), [](const Candidate& x, const Candidate& y) {
    if (x.overlap != y.overlap) return x.overlap > y.overlap;
    if (x.tie != y.tie) return x.tie < y.tie;
    return std::tie(x.row, x.col) < std::tie(y.row, y.col);
  });
  std::vector<Eigen::Index> col_of_row(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(w.cols()), false);
  Eigen::Index left = std::min(n, w.cols());
  for (const auto& c : all) {
    if (left == 0) break;
    if (col_of_row[c.row] >= 0 || used[c.col]) continue;
    col_of_row[c.row] = c.col;
    used[c.col] = true;
    --left;
  }
  return col_of_row;
}

}  // namespace

StaticReference static_eigensolve(const OperatorMatrix& h0) {
  StaticReference ref;
  ref.layout = h0.layout;
  auto eig = linalg::hermitian_eig(h0.m);
  ref.energies = std::move(eig.values);
  ref.vectors = std::move(eig.vectors);

  // Rows: Fock states, columns: eigenvectors.
  const Eigen::MatrixXd w = ref.vectors.cwiseAbs2();
  const auto vec_of_fock = greedy_match(w, ref.energies);
  ref.labels.assign(static_cast<std::size_t>(ref.energies.size()), {});
  for (Eigen::Index f = 0; f < w.rows(); ++f) {
    const Eigen::Index col = vec_of_fock[f];
    Label label = ref.layout.occupation(f);
    ref.labels[col] = label;
    ref.index[label] = col;
  }
  return ref;
}

namespace {

// Advances u by one step of length dt starting at t.
void step(const HarmonicHamiltonian& h, double omega_d, double t, double dt, Integrator scheme,
          Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd k;
  if (scheme == Integrator::midpoint) {
    k = h.at(t + 0.5 * dt, omega_d);
  } else {
    const double c = std::sqrt(3.0) / 6.0;
    const Eigen::MatrixXcd h1 = h.at(t + (0.5 - c) * dt, omega_d);
    const Eigen::MatrixXcd h2 = h.at(t + (0.5 + c) * dt, omega_d);
    const Eigen::MatrixXcd comm = h2 * h1 - h1 * h2;
    k = 0.5 * (h1 + h2) - cplx(0, std::sqrt(3.0) / 12.0 * dt) * comm;
  }
  u = linalg::expm_hermitian(k, dt) * u;
}

Propagation run_period(const HarmonicHamiltonian& h, double omega_d, int steps, int grid_points,
                       Integrator scheme) {
  Propagation p;
  p.omega_d = omega_d;
  p.period = kTwoPi / omega_d;
  p.steps = steps;
  p.integrator = scheme;
  const Eigen::Index n = h.layout().total();
  p.U = Eigen::MatrixXcd::Identity(n, n);
  const double dt = p.period / steps;
  const int stride = grid_points > 0 ? steps / grid_points : 0;
  for (int s = 0; s < steps; ++s) {
    if (stride > 0 && s % stride == 0) p.grid.push_back(p.U);
    step(h, omega_d, s * dt, dt, scheme, p.U);
  }
  return p;
}

}  // namespace

Propagation propagate_one_period(const HarmonicHamiltonian& h, double omega_d,
                                 const PropagatorOptions& options) {
  if (!(omega_d > 0)) throw std::invalid_argument("omega_d must be positive");
  const int g = std::max(options.grid_points, 0);
  int steps = std::max(options.initial_steps, 1);
  if (g > 0) steps = ((steps + g - 1) / g) * g;

  Propagation coarse = run_period(h, omega_d, steps, g, options.integrator);
  if (!options.adaptive) {
    coarse.error_estimate = std::numeric_limits<double>::quiet_NaN();
    return coarse;
  }
  while (true) {
    if (2 * steps > options.max_steps)
      throw NumericalError("propagator did not converge within " +
                           std::to_string(options.max_steps) + " steps");
    steps *= 2;
    Propagation fine = run_period(h, omega_d, steps, g, options.integrator);
    fine.error_estimate = linalg::max_abs(fine.U - coarse.U);
    if (fine.error_estimate < options.tol) return fine;
    coarse = std::move(fine);
  }
}

Eigen::MatrixXcd propagate(const HarmonicHamiltonian& h, double omega_d, double t0, double t1,
                           int steps, Integrator integrator) {
  const Eigen::Index n = h.layout().total();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
  const double dt = (t1 - t0) / steps;
  for (int s = 0; s < steps; ++s) step(h, omega_d, t0 + s * dt, dt, integrator, u);
  return u;
}

Eigen::MatrixXcd simulate_time_domain(const HarmonicHamiltonian& h, double omega_d,
                                      int n_periods, int steps_per_period,
                                      Integrator integrator) {
  const double period = kTwoPi / omega_d;
  return propagate(h, omega_d, 0.0, n_periods * period, n_periods * steps_per_period,
                   integrator);
}

double fold(double e, double omega) {
  double f = e - omega * std::floor(e / omega + 0.5);
  if (f >= 0.5 * omega) f -= omega;
  if (f < -0.5 * omega) f += omega;
  return f;
}

double unfold_near(double e, double omega, double target) {
  return e + omega * std::round((target - e) / omega);
}

bool FloquetSolution::tracked(const Label& label) const {
  return labels.count(label) > 0 && excluded.count(label) == 0;
}

const LabelInfo& FloquetSolution::info(const Label& label) const {
  auto it = labels.find(label);
  if (it == labels.end()) throw std::out_of_range("no Floquet mode labeled " + to_string(label));
  return it->second;
}

FloquetSolution floquet_decompose(const Eigen::MatrixXcd& U, double omega_d,
                                  const StaticReference& ref, double threshold) {
  FloquetSolution s;
  s.omega_d = omega_d;
  s.period = kTwoPi / omega_d;
  s.threshold = threshold;
  auto eig = linalg::unitary_eig(U);
  const Eigen::Index n = eig.values.size();
  s.quasienergies.resize(n);
  for (Eigen::Index i = 0; i < n; ++i)
    s.quasienergies(i) = fold(-std::arg(eig.values(i)) / s.period, omega_d);
  s.modes_t0 = std::move(eig.vectors);
  s.unfolded = s.quasienergies;

  // Rows: reference states, columns: Floquet modes.
  const Eigen::MatrixXd w = (ref.vectors.adjoint() * s.modes_t0).cwiseAbs2();
  const auto mode_of_ref = greedy_match(w, Eigen::VectorXd::Zero(n));
  std::vector<Eigen::Index> ref_of_mode(static_cast<std::size_t>(n), -1);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Eigen::Index m = mode_of_ref[r];
    ref_of_mode[m] = r;
    LabelInfo li;
    li.mode = m;
    li.overlap = w(r, m);
    li.k = static_cast<int>(std::round((ref.energies(r) - s.quasienergies(m)) / omega_d));
    s.unfolded(m) = s.quasienergies(m) + li.k * omega_d;
    s.labels[ref.labels[r]] = li;
    if (li.overlap < threshold) s.excluded.insert(ref.labels[r]);
  }

  // Coincident eigenphases: the eigenvectors are an arbitrary basis of the
  // degenerate pair, so the weaker label cannot be trusted.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto x, auto y) { return s.quasienergies(x) < s.quasienergies(y); });
  for (std::size_t i = 0; n > 1 && i < order.size(); ++i) {
    const Eigen::Index x = order[i], y = order[(i + 1) % order.size()];
    if (x == y) continue;
    const double d = std::abs(fold(s.quasienergies(x) - s.quasienergies(y), omega_d));
    if (d * s.period >= 1e-12) continue;
    const double ox = w(ref_of_mode[x], x), oy = w(ref_of_mode[y], y);
    if (std::min(ox, oy) > 1.0 - 1e-9) continue;
    const Eigen::Index weak = ox < oy ? x : y;
    s.excluded.insert(ref.labels[ref_of_mode[weak]]);
  }
  return s;
}

PairResolution resolve_pair(const FloquetSolution& solution, const StaticReference& ref,
                            const Label& first, const Label& second) {
  const double w = solution.omega_d;
  const Eigen::VectorXcd r1 = ref.vectors.col(ref.at(first));
  const Eigen::VectorXcd r2 = ref.vectors.col(ref.at(second));
  const Eigen::VectorXcd p1 = solution.modes_t0.adjoint() * r1;  // conj(<r1|mode>)
  const Eigen::VectorXcd p2 = solution.modes_t0.adjoint() * r2;
  const Eigen::VectorXd weight = p1.cwiseAbs2() + p2.cwiseAbs2();

  Eigen::Index a = 0, b = -1;
  weight.maxCoeff(&a);
  for (Eigen::Index i = 0; i < weight.size(); ++i)
    if (i != a && (b < 0 || weight(i) > weight(b))) b = i;

  PairResolution out;
  out.weight = std::min(weight(a), weight(b));
  out.tracked = out.weight >= solution.threshold;

  const double e1 = ref.energy(first), e2 = ref.energy(second);
  out.photons = static_cast<int>(std::round((e1 - e2) / w));
  const double center = 0.5 * (e1 + e2 + out.photons * w);
  const double ea = unfold_near(solution.quasienergies(a), w, center);
  const double eb = unfold_near(solution.quasienergies(b), w, ea);

  Eigen::Matrix2cd p;
  p << std::conj(p1(a)), std::conj(p1(b)), std::conj(p2(a)), std::conj(p2(b));
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2cd rot = svd.matrixU() * svd.matrixV().adjoint();
  const Eigen::Matrix2cd heff = rot * Eigen::Vector2cd(ea, eb).asDiagonal() * rot.adjoint();

  out.J = std::abs(heff(0, 1));
  out.detuning = heff(0, 0).real() - heff(1, 1).real();
  out.level_first = heff(0, 0).real();
  out.level_second = heff(1, 1).real() - out.photons * w;
  out.gap = std::abs(ea - eb);
  out.sum = unfold_near(ea + eb, w, e1 + e2);
  return out;
}

WalshResult walsh_cross_kerr(const FloquetSolution& solution, const StaticReference& ref) {
  const std::size_t modes = ref.layout.modes();
  if (modes < 2) throw std::invalid_argument("cross-Kerr needs at least two modes");
  auto label = [&](int na, int nb) {
    Label l(modes, 0);
    l[0] = na;
    l[1] = nb;
    return l;
  };
  const Label l00 = label(0, 0), l10 = label(1, 0), l01 = label(0, 1), l11 = label(1, 1);
  const PairResolution mid = resolve_pair(solution, ref, l10, l01);
  WalshResult out;
  out.chi = solution.energy(l11) - mid.sum + solution.energy(l00);
  out.tracked = mid.tracked && solution.tracked(l11) && solution.tracked(l00);
  return out;
}

namespace {

struct Evaluation {
  double omega_d = 0;
  Propagation propagation;
  FloquetSolution solution;
  PairResolution pair;
};

Evaluation evaluate(const HarmonicHamiltonian& h, const StaticReference& ref, double omega_d,
                    const Label& first, const Label& second, const CalibrationOptions& options) {
  Evaluation e;
  e.omega_d = omega_d;
  e.propagation = propagate_one_period(h, omega_d, options.propagator);
  e.solution = floquet_decompose(e.propagation.U, omega_d, ref, options.threshold);
  e.pair = resolve_pair(e.solution, ref, first, second);
  if (!e.pair.tracked)
    throw NumericalError("lost track of the pair " + to_string(first) + "/" + to_string(second) +
                         " during calibration");
  return e;
}

Calibration finish(Evaluation&& e, int solves, bool from_gap) {
  Calibration c;
  c.omega_d = e.omega_d;
  c.gap = e.pair.gap;
  c.J = from_gap ? 0.5 * e.pair.gap : e.pair.J;
  c.solves = solves;
  c.pair = e.pair;
  c.solution = std::move(e.solution);
  c.propagation = std::move(e.propagation);
  return c;
}

}  // namespace

Calibration calibrate_drive_frequency(const HarmonicHamiltonian& h, const StaticReference& ref,
                                      double guess, const Label& first, const Label& second,
                                      const CalibrationOptions& options) {
  if (!(guess > 0)) throw std::invalid_argument("calibration guess must be positive");
  int solves = 0;
  double omega = guess;
  Evaluation e = evaluate(h, ref, omega, first, second, options);
  ++solves;
  if (e.pair.photons == 0)
    throw std::invalid_argument("levels " + to_string(first) + " and " + to_string(second) +
                                " are not connected by the drive near this frequency");
  for (int it = 0; it < options.newton_iterations; ++it) {
    const double delta = e.pair.detuning / e.pair.photons;
    if (std::abs(delta) < options.tol) break;
    omega += delta;
    if (!(omega > 0)) throw NumericalError("calibration drove omega_d nonpositive");
    e = evaluate(h, ref, omega, first, second, options);
    ++solves;
  }
  if (options.method == CalibrationMethod::two_level) return finish(std::move(e), solves, false);

  // Golden-section search on the gap around the Newton estimate.
  const double half = std::max(3.0 * e.pair.J, kTwoPi * 1e-4);
  double lo = omega - half, hi = omega + half;
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo), x2 = lo + ratio * (hi - lo);
  Evaluation f1 = evaluate(h, ref, x1, first, second, options);
  Evaluation f2 = evaluate(h, ref, x2, first, second, options);
  solves += 2;
  Evaluation best = e.pair.gap < std::min(f1.pair.gap, f2.pair.gap)
                        ? std::move(e)
                        : (f1.pair.gap < f2.pair.gap ? f1 : f2);
  while (hi - lo > options.tol) {
    if (f1.pair.gap < f2.pair.gap) {
      hi = x2;
      x2 = x1;
      f2 = std::move(f1);
      x1 = hi - ratio * (hi - lo);
      f1 = evaluate(h, ref, x1, first, second, options);
      if (f1.pair.gap < best.pair.gap) best = f1;
    } else {
      lo = x1;
      x1 = x2;
      f1 = std::move(f2);
      x2 = lo + ratio * (hi - lo);
      f2 = evaluate(h, ref, x2, first, second, options);
      if (f2.pair.gap < best.pair.gap) best = f2;
    }
    ++solves;
  }
  const double edge = std::min(best.omega_d - (omega - half), (omega + half) - best.omega_d);
  if (edge < 2.0 * options.tol)
    throw NumericalError("gap minimum sits on the calibration bracket edge");
  return finish(std::move(best), solves, true);
}

RabiTrace rabi_crosscheck(const Propagation& propagation, const StaticReference& ref,
                          const Label& initial, const std::vector<Label>& watch, int n_periods) {
  RabiTrace out;
  Eigen::VectorXcd psi = ref.vectors.col(ref.at(initial));
  std::vector<Eigen::VectorXcd> targets;
  for (const auto& l : watch) targets.push_back(ref.vectors.col(ref.at(l)));
  for (int n = 0; n <= n_periods; ++n) {
    out.times.push_back(n * propagation.period);
    for (std::size_t i = 0; i < watch.size(); ++i)
      out.populations[watch[i]].push_back(std::norm(targets[i].dot(psi)));
    if (n < n_periods) psi = propagation.U * psi;
  }
  return out;
}

std::vector<Eigen::MatrixXcd> floquet_modes_on_grid(const FloquetSolution& solution,
                                                    const Propagation& propagation) {
  if (propagation.grid.empty()) throw std::logic_error("propagator grid was not retained");
  const std::size_t g = propagation.grid.size();
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(g);
  for (std::size_t i = 0; i < g; ++i) {
    const double t = propagation.period * static_cast<double>(i) / static_cast<double>(g);
    Eigen::MatrixXcd m = propagation.grid[i] * solution.modes_t0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m.col(c) *= std::exp(cplx(0, solution.unfolded(c) * t));
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace paragate
