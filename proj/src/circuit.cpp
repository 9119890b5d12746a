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

#include "paragate/circuit.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "paragate/common.hpp"

namespace paragate {

namespace {

constexpr double kElectronCharge = 1.602176634e-19;  // C
constexpr double kPlanck = 6.62607015e-34;           // J s

}  // namespace

void CircuitParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("CircuitParams: " + what); };
  if (!(C_a > 0 && C_b > 0 && C_c > 0)) fail("diagonal capacitances must be positive");
  if (C_ab < 0 || C_bc < 0 || C_ac < 0) fail("coupling capacitances must be nonnegative");
  if (!(E_Ja > 0 && E_Jb > 0 && E_Jc > 0)) fail("Josephson energies must be positive");
  if (N < 1) fail("N must be at least 1");
  if (C_alpha.has_value() != C_beta.has_value()) fail("give both C_alpha and C_beta or neither");
  if (mu_alpha.has_value() != mu_beta.has_value()) fail("give both mu_alpha and mu_beta or neither");
}

ChargingEnergies charging_energies(const CircuitParams& params) {
  params.validate();
  Eigen::Matrix3d c;
  c << params.C_a + params.C_ab + params.C_ac, -params.C_ab, -params.C_ac,
      -params.C_ab, params.C_b + params.C_ab + params.C_bc, -params.C_bc,
      -params.C_ac, -params.C_bc, params.C_c + params.C_ac + params.C_bc;
  Eigen::LLT<Eigen::Matrix3d> llt(c);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("charging_energies: capacitance matrix not positive definite");
  Eigen::Matrix3d inv = llt.solve(Eigen::Matrix3d::Identity());
  // inv is in 1/fF; e^2 (C^-1) / h in GHz, then to rad/ns.
  const double scale = kElectronCharge * kElectronCharge / kPlanck / 1e-15 / 1e9 * kTwoPi;
  ChargingEnergies ec;
  ec.E_Ca = scale * inv(0, 0) / 2;
  ec.E_Cb = scale * inv(1, 1) / 2;
  ec.E_Cc = scale * inv(2, 2) / 2;
  ec.E_Cab = scale * inv(0, 1);
  ec.E_Cbc = scale * inv(1, 2);
  ec.E_Cca = scale * inv(2, 0);
  return ec;
}

std::pair<double, double> mu_weights(double C_alpha, double C_beta, int N) {
  if (C_alpha < 0 || C_beta < 0 || !(C_alpha + C_beta > 0))
    throw std::invalid_argument("mu_weights: need C_alpha, C_beta >= 0 with positive sum");
  if (N < 1) throw std::invalid_argument("mu_weights: N must be at least 1");
  const double total = C_alpha + C_beta;
  return {C_beta / total, -(C_alpha / total) / N};
}

std::pair<double, double> branch_weights(const CircuitParams& params) {
  if (params.mu_alpha) return {*params.mu_alpha, *params.mu_beta};
  if (params.C_alpha) return mu_weights(*params.C_alpha, *params.C_beta, params.N);
  return {1.0, 0.0};
}

namespace {

struct CouplerPotential {
  double a, b;      // alpha eps J0(mu_a d), beta J0(mu_b d), in units of E_Jc
  double sa, sb;    // mu_a phi_bar, mu_b phi_bar
  int n;
  double value(double x) const { return -a * std::cos(x + sa) - b * n * std::cos(x / n + sb); }
  double slope(double x) const { return a * std::sin(x + sa) + b * std::sin(x / n + sb); }
  double curvature(double x) const { return a * std::cos(x + sa) + b * std::cos(x / n + sb) / n; }
};

CouplerPotential coupler_potential(const CircuitParams& params, const DriveSpec& drive) {
  auto [mu_a, mu_b] = branch_weights(params);
  return {params.alpha * params.epsilon * bessel_j(0, mu_a * drive.delta_phi),
          params.beta * bessel_j(0, mu_b * drive.delta_phi), mu_a * drive.phi_ext_bar,
          mu_b * drive.phi_ext_bar, params.N};
}

double bisect(auto&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double classical_displacement(const CircuitParams& params, const DriveSpec& drive) {
  const CouplerPotential pot = coupler_potential(params, drive);
  const double pi = std::numbers::pi;
  auto accept = [&](double x) { return x > -pi && x <= pi && pot.curvature(x) > 0; };

  double x = 0;
  bool converged = false;
  for (int it = 0; it < 50; ++it) {
    double c = pot.curvature(x);
    if (c <= 0) break;
    double step = pot.slope(x) / c;
    x -= step;
    if (std::abs(step) < 1e-14) {
      converged = true;
      break;
    }
  }
  if (converged && accept(x)) return x;

  // Fallback: scan the principal branch for slope sign changes from - to +
  // and keep the deepest minimum.
  constexpr int kScan = 2000;
  double best = std::numeric_limits<double>::quiet_NaN();
  double best_v = std::numeric_limits<double>::infinity();
  double prev_x = -pi, prev_s = pot.slope(-pi);
  for (int i = 1; i <= kScan; ++i) {
    double xi = -pi + 2 * pi * i / kScan;
    double si = pot.slope(xi);
    if (prev_s < 0 && si >= 0) {
      double root = bisect([&](double y) { return pot.slope(y); }, prev_x, xi, 1e-15);
      if (accept(root) && pot.value(root) < best_v) {
        best = root;
        best_v = pot.value(root);
      }
    }
    prev_x = xi;
    prev_s = si;
  }
  if (std::isnan(best))
    throw NumericalError("classical_displacement: no potential minimum in (-pi, pi]");
  return best;
}

CouplerPhases coupler_phases(const CircuitParams& params, const DriveSpec& drive, bool displace) {
  CouplerPhases ph;
  std::tie(ph.mu_alpha, ph.mu_beta) = branch_weights(params);
  ph.phi_cls = displace ? classical_displacement(params, drive) : 0.0;
  ph.theta_alpha = ph.mu_alpha * drive.phi_ext_bar + ph.phi_cls;
  ph.theta_beta = ph.mu_beta * drive.phi_ext_bar + ph.phi_cls / params.N;
  return ph;
}

double coupler_form_factor(const CircuitParams& params, const DriveSpec& drive,
                           const CouplerPhases& phases, double eta) {
  const double n = params.N;
  return params.alpha * params.epsilon * std::exp(-eta / 4) *
             bessel_j(0, phases.mu_alpha * drive.delta_phi) * std::cos(phases.theta_alpha) +
         params.beta * std::exp(-eta / (4 * n * n)) *
             bessel_j(0, phases.mu_beta * drive.delta_phi) * std::cos(phases.theta_beta) / n;
}

namespace {

constexpr double kEtaLo = 1e-6;
constexpr double kEtaHi = 10.0;
constexpr double kEtaTol = 1e-12;

// Smallest root of form(eta) eta^2 - target on (kEtaLo, kEtaHi].
double solve_eta_equation(auto&& form, double target, const char* mode) {
  auto g = [&](double eta) { return form(eta) * eta * eta - target; };
  constexpr int kScan = 400;
  double prev = kEtaLo, gprev = g(kEtaLo);
  for (int i = 1; i <= kScan; ++i) {
    double x = kEtaLo * std::pow(kEtaHi / kEtaLo, static_cast<double>(i) / kScan);
    double gx = g(x);
    if ((gprev < 0) != (gx < 0)) return bisect(g, prev, x, kEtaTol);
    prev = x;
    gprev = gx;
  }
  throw NumericalError(std::string("solve_eta: no sign change for mode ") + mode +
                       " (mode softening: form factor nonpositive near this flux bias)");
}

}  // namespace

double solve_transmon_eta(double e_c, double e_j) {
  if (!(e_c > 0 && e_j > 0)) throw std::invalid_argument("solve_eta: E_C and E_J must be positive");
  return solve_eta_equation([](double eta) { return std::exp(-eta / 4); }, 8 * e_c / e_j, "a/b");
}

EtaSolution solve_eta(const CircuitParams& params, const DriveSpec& drive, bool displace) {
  const ChargingEnergies ec = charging_energies(params);
  const CouplerPhases ph = coupler_phases(params, drive, displace);
  EtaSolution s;
  s.eta_a = solve_transmon_eta(ec.E_Ca, params.E_Ja);
  s.eta_b = solve_transmon_eta(ec.E_Cb, params.E_Jb);
  s.eta_c = solve_eta_equation(
      [&](double eta) { return coupler_form_factor(params, drive, ph, eta); },
      8 * ec.E_Cc / params.E_Jc, "c");
  return s;
}

BareCircuit bare_circuit(const CircuitParams& params, const DriveSpec& drive, bool displace) {
  BareCircuit bc;
  bc.ec = charging_energies(params);
  bc.phases = coupler_phases(params, drive, displace);
  bc.eta.eta_a = solve_transmon_eta(bc.ec.E_Ca, params.E_Ja);
  bc.eta.eta_b = solve_transmon_eta(bc.ec.E_Cb, params.E_Jb);
  bc.eta.eta_c = solve_eta_equation(
      [&](double eta) { return coupler_form_factor(params, drive, bc.phases, eta); },
      8 * bc.ec.E_Cc / params.E_Jc, "c");
  auto omega = [](double e_c, double e_j, double form, double eta) {
    return 4 * e_c / eta + 0.5 * form * eta * e_j;
  };
  bc.omega_a = omega(bc.ec.E_Ca, params.E_Ja, std::exp(-bc.eta.eta_a / 4), bc.eta.eta_a);
  bc.omega_b = omega(bc.ec.E_Cb, params.E_Jb, std::exp(-bc.eta.eta_b / 4), bc.eta.eta_b);
  bc.form_c = coupler_form_factor(params, drive, bc.phases, bc.eta.eta_c);
  bc.omega_c = omega(bc.ec.E_Cc, params.E_Jc, bc.form_c, bc.eta.eta_c);
  return bc;
}

Eigen::MatrixXcd HarmonicHamiltonian::at(double t, double omega_d) const {
  Eigen::MatrixXcd h = static_part.m;
  for (const auto& [n, term] : harmonics) {
    const double c = std::cos(n * omega_d * t), s = std::sin(n * omega_d * t);
    if (term.cos_part.size()) h += c * term.cos_part;
    if (term.sin_part.size()) h += s * term.sin_part;
  }
  return h;
}

HarmonicHamiltonian HarmonicHamiltonian::shifted(double c) const {
  HarmonicHamiltonian out = *this;
  out.static_part.m.diagonal().array() += c;
  return out;
}

namespace {

// Coefficients of -E cos(phi + theta) (TrigKind::cos) or E sin(phi + theta)
// (TrigKind::sin) with <phi^2> = eta/2, keeping lo <= m+n <= hi.
CoefficientTable shifted_trig(TrigKind kind, double energy, double theta, double eta, int lo,
                              int hi) {
  const CoefficientTable tc = normal_ordered_trig(TrigKind::cos, eta, hi);
  const CoefficientTable ts = normal_ordered_trig(TrigKind::sin, eta, hi);
  CoefficientTable out;
  const double ct = std::cos(theta), st = std::sin(theta);
  auto add = [&](const CoefficientTable& t, double w) {
    for (const auto& [mn, c] : t) {
      int order = mn.first + mn.second;
      if (order >= lo && order <= hi && w != 0) out[mn] += w * c;
    }
  };
  if (kind == TrigKind::cos) {
    // -E [cos(theta) cos(phi) - sin(theta) sin(phi)]
    add(tc, -energy * ct);
    add(ts, energy * st);
  } else {
    // E [sin(phi) cos(theta) + cos(phi) sin(theta)]
    add(ts, energy * ct);
    add(tc, energy * st);
  }
  return out;
}

void accumulate(CoefficientTable& into, const CoefficientTable& from) {
  for (const auto& [mn, c] : from) into[mn] += c;
}

Eigen::MatrixXcd coupling_term(const FockLayout& layout, std::size_t i, std::size_t j,
                               double strength) {
  // -strength (a_i - a_i^dag)(a_j - a_j^dag)
  Eigen::MatrixXcd ai = annihilator(layout, i).m;
  Eigen::MatrixXcd aj = annihilator(layout, j).m;
  Eigen::MatrixXcd xi = ai - Eigen::MatrixXcd(ai.adjoint());
  Eigen::MatrixXcd xj = aj - Eigen::MatrixXcd(aj.adjoint());
  return -strength * (xi * xj);
}

std::vector<std::string> truncation_warnings(const FockLayout& layout) {
  std::vector<std::string> w;
  for (std::size_t k = 0; k < layout.modes(); ++k)
    if (layout.dim(k) < 3)
      w.push_back("mode " + std::to_string(k) +
                  " truncated below 3 levels; quartic terms act unfaithfully");
  return w;
}

}  // namespace

HarmonicHamiltonian build_circuit_hamiltonian(const CircuitParams& params, const DriveSpec& drive,
                                              const FockLayout& layout,
                                              const CircuitBuildOptions& options) {
  if (layout.modes() != 3) throw std::invalid_argument("build_circuit_hamiltonian: need 3 modes");
  if (options.order < 2) throw std::invalid_argument("build_circuit_hamiltonian: order < 2");
  if (drive.n_harmonics < 1) throw std::invalid_argument("build_circuit_hamiltonian: n_harmonics < 1");
  if (drive.delta_phi < 0) throw std::invalid_argument("build_circuit_hamiltonian: delta_phi < 0");
  const BareCircuit bc = bare_circuit(params, drive, options.displace);
  const int order = options.order;
  const int n = params.N;
  const double eta_beta = bc.eta.eta_c / (n * n);
  const double e_alpha = params.alpha * params.epsilon * params.E_Jc;
  const double e_beta = params.beta * n * params.E_Jc;
  const double z_alpha = bc.phases.mu_alpha * drive.delta_phi;
  const double z_beta = bc.phases.mu_beta * drive.delta_phi;

  HarmonicHamiltonian h;
  h.warnings = truncation_warnings(layout);
  const Eigen::Index dim = layout.total();
  h.static_part = {layout, Eigen::MatrixXcd::Zero(dim, dim), OperatorKind::observable,
                   Units::angular_frequency};
  Eigen::MatrixXcd& h0 = h.static_part.m;

  // Transmons: omega a^dag a plus the nonlinear part of -E_J cos(phi).
  const double etas[2] = {bc.eta.eta_a, bc.eta.eta_b};
  const double ejs[2] = {params.E_Ja, params.E_Jb};
  const double omegas[3] = {bc.omega_a, bc.omega_b, bc.omega_c};
  for (std::size_t j = 0; j < 2; ++j) {
    if (order >= 4) h0 += materialize(shifted_trig(TrigKind::cos, ejs[j], 0, etas[j], 4, order),
                                      layout, j).m;
  }
  for (std::size_t j = 0; j < 3; ++j) h0 += omegas[j] * number_operator(layout, j).m;

  // Coupler static part: the quadratic piece is omega_c c^dag c by the choice
  // of eta_c; orders 1 and >= 3 come from the displaced cosines.
  CoefficientTable coupler;
  accumulate(coupler, shifted_trig(TrigKind::cos, e_alpha * bessel_j(0, z_alpha),
                                   bc.phases.theta_alpha, bc.eta.eta_c, 1, order));
  accumulate(coupler, shifted_trig(TrigKind::cos, e_beta * bessel_j(0, z_beta),
                                   bc.phases.theta_beta, eta_beta, 1, order));
  coupler.erase({1, 1});
  coupler.erase({2, 0});
  coupler.erase({0, 2});
  h0 += materialize(coupler, layout, 2).m;

  // Capacitive couplings.
  h0 += coupling_term(layout, 0, 1, 2 * bc.ec.E_Cab / std::sqrt(bc.eta.eta_a * bc.eta.eta_b));
  h0 += coupling_term(layout, 1, 2, 2 * bc.ec.E_Cbc / std::sqrt(bc.eta.eta_b * bc.eta.eta_c));
  h0 += coupling_term(layout, 2, 0, 2 * bc.ec.E_Cca / std::sqrt(bc.eta.eta_c * bc.eta.eta_a));

  // Jacobi-Anger harmonics of -E cos(phi + theta + z sin wt):
  // even n: -2 E J_n(z) cos(phi + theta) cos(n w t); odd n: +2 E J_n(z) sin(phi + theta) sin(n w t).
  if (drive.delta_phi > 0) {
    for (int k = 1; k <= drive.n_harmonics; ++k) {
      const TrigKind kind = (k % 2 == 0) ? TrigKind::cos : TrigKind::sin;
      CoefficientTable t;
      accumulate(t, shifted_trig(kind, 2 * e_alpha * bessel_j(k, z_alpha),
                                 bc.phases.theta_alpha, bc.eta.eta_c, 1, order));
      accumulate(t, shifted_trig(kind, 2 * e_beta * bessel_j(k, z_beta),
                                 bc.phases.theta_beta, eta_beta, 1, order));
      Eigen::MatrixXcd m = materialize(t, layout, 2).m;
      HarmonicTerm term;
      (kind == TrigKind::cos ? term.cos_part : term.sin_part) = std::move(m);
      h.harmonics.emplace(k, std::move(term));
    }
  }
  return h;
}

HarmonicHamiltonian build_toy_hamiltonian(const ToyParams& toy, const FockLayout& layout) {
  if (layout.modes() != 3) throw std::invalid_argument("build_toy_hamiltonian: need 3 modes");
  const Eigen::Index dim = layout.total();
  HarmonicHamiltonian h;
  h.static_part = {layout, Eigen::MatrixXcd::Zero(dim, dim), OperatorKind::observable,
                   Units::angular_frequency};
  const double omegas[3] = {toy.omega_a, toy.omega_b, toy.omega_c};
  const double alphas[3] = {toy.alpha_a, toy.alpha_b, toy.alpha_c};
  for (Eigen::Index i = 0; i < dim; ++i) {
    double e = 0;
    for (std::size_t j = 0; j < 3; ++j) {
      const int n = layout.occupation(i, j);
      e += omegas[j] * n + 0.5 * alphas[j] * n * (n - 1);
    }
    h.static_part.m(i, i) = e;
  }
  auto hop = [&](std::size_t i, std::size_t j, double g) {
    if (g == 0) return;
    Eigen::MatrixXcd m = creator(layout, i).m * annihilator(layout, j).m;
    h.static_part.m -= g * (m + Eigen::MatrixXcd(m.adjoint()));
  };
  hop(0, 1, toy.g_ab);
  hop(1, 2, toy.g_bc);
  hop(2, 0, toy.g_ca);
  if (toy.delta != 0) {
    HarmonicTerm term{Eigen::MatrixXcd(), toy.delta * number_operator(layout, 2).m};
    h.harmonics.emplace(1, std::move(term));
  }
  return h;
}

HarmonicHamiltonian rwa_strip(const HarmonicHamiltonian& h) {
  HarmonicHamiltonian out = h;
  const FockLayout& layout = h.layout();
  std::vector<int> number(layout.total());
  for (Eigen::Index i = 0; i < layout.total(); ++i) number[i] = layout.total_number(i);
  auto strip = [&](Eigen::MatrixXcd& m) {
    if (m.size() == 0) return;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (number[r] != number[c]) m(r, c) = 0;
  };
  strip(out.static_part.m);
  for (auto& [n, term] : out.harmonics) {
    strip(term.cos_part);
    strip(term.sin_part);
  }
  return out;
}

OperatorMatrix bare_charge_operator(const FockLayout& layout, std::size_t mode, double eta) {
  return quadratures(layout, mode, eta).n;
}

}  // namespace paragate
