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

#include "paragate/analytics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace paragate {

namespace {

constexpr int A = 0, B = 1, C = 2;

}  // namespace

EffectiveCouplings toy_first_order(const NormalModeBasis& basis, const ToyParams& toy) {
  const Eigen::MatrixXd& u = basis.u;
  const double alpha[3] = {toy.alpha_a, toy.alpha_b, toy.alpha_c};
  auto anh = [&](int j) {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += std::pow(u(i, j), 4) * alpha[i];
    return s;
  };
  auto chi = [&](int j, int k) {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += 2 * u(i, j) * u(i, j) * u(i, k) * u(i, k) * alpha[i];
    return s;
  };
  EffectiveCouplings e;
  e.J_ab = u(C, A) * u(C, B) * toy.delta / 2;
  e.alpha_a = anh(A);
  e.alpha_b = anh(B);
  e.alpha_c = anh(C);
  e.chi_ab = chi(A, B);
  e.chi_bc = chi(B, C);
  e.chi_ca = chi(C, A);
  return e;
}

SecondOrderChi toy_second_order_chi(const NormalModeBasis& basis, const ToyParams& toy,
                                    double den_tol) {
  // w(j, x) is the weight of bare mode j in normal mode x; the sums run over
  // the bare index carrying the anharmonicity.
  const Eigen::MatrixXd& w = basis.u;
  const double alpha[3] = {toy.alpha_a, toy.alpha_b, toy.alpha_c};
  const double wa = basis.frequencies[A], wb = basis.frequencies[B], wc = basis.frequencies[C];
  auto sum = [&](auto&& term) {
    double s = 0;
    for (int j = 0; j < 3; ++j) s += term(j) * alpha[j];
    return s;
  };
  const double t1 = sum([&](int j) { return w(j, A) * w(j, A) * w(j, B) * w(j, C); });
  const double t2 = sum([&](int j) { return w(j, A) * w(j, B) * w(j, B) * w(j, C); });
  const double t3 = sum([&](int j) { return w(j, A) * w(j, B) * w(j, C) * w(j, C); });
  const double t4 = sum([&](int j) { return std::pow(w(j, A), 3) * w(j, B); });
  const double t5 = sum([&](int j) { return w(j, A) * std::pow(w(j, B), 3); });
  const double t6 = w(C, A) * w(C, B) * sum([&](int j) {
                      return w(j, A) * w(j, B) * (w(j, A) * w(j, A) - w(j, B) * w(j, B));
                    });
  const double numer[5] = {4 * t1 * t1, 4 * t2 * t2, 2 * t3 * t3, -2 * t4 * t4, 2 * t5 * t5};

  const double bare[5] = {wb - wc, wa - wc, wa + wb - 2 * wc, wa - wb, wa - wb};
  auto sq = [&](int j, int x) { return w(j, x) * w(j, x); };
  const double dressed[5] = {
      bare[0] + sum([&](int j) { return 2 * sq(j, A) * (sq(j, B) - sq(j, C)); }),
      bare[1] + sum([&](int j) { return 2 * sq(j, B) * (sq(j, A) - sq(j, C)); }),
      bare[2] + sum([&](int j) { return 2 * sq(j, A) * sq(j, B) - sq(j, C) * sq(j, C); }),
      bare[3] + sum([&](int j) { return sq(j, A) * sq(j, A) - 2 * sq(j, A) * sq(j, B); }),
      bare[4] + sum([&](int j) { return 2 * sq(j, A) * sq(j, B) - sq(j, B) * sq(j, B); }),
  };

  SecondOrderChi out;
  out.min_bare_denominator = out.min_dressed_denominator = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 5; ++k) {
    out.bare_denominators += numer[k] / bare[k];
    out.dressed_denominators += numer[k] / dressed[k];
    out.min_bare_denominator = std::min(out.min_bare_denominator, std::abs(bare[k]));
    out.min_dressed_denominator = std::min(out.min_dressed_denominator, std::abs(dressed[k]));
  }
  out.bare_denominators += t6 * toy.delta / bare[3];
  out.bare_divergent = out.min_bare_denominator < den_tol;
  out.dressed_divergent = out.min_dressed_denominator < den_tol;
  return out;
}

double toy_bessel_gate_rate(const NormalModeBasis& basis, const ToyParams& toy, double omega_d) {
  if (!(omega_d > 0)) throw std::invalid_argument("toy_bessel_gate_rate: omega_d must be positive");
  const double uca = basis.u(C, A), ucb = basis.u(C, B);
  const double xa = toy.delta * uca * uca / omega_d;
  const double xb = toy.delta * ucb * ucb / omega_d;
  return 0.5 * toy.delta * uca * ucb *
         (bessel_j(0, xa) * bessel_j(0, xb) + 3 * bessel_j(1, xa) * bessel_j(1, xb));
}

namespace {

struct CouplerEnergies {
  double ej_a, ej_b, ej_c;  // E'_J for each bare mode
  double e_alpha, e_beta;   // E_Jc^(alpha), E_Jc^(beta)
};

CouplerEnergies dressed_energies(const NormalModeBasis& basis, const CircuitParams& params,
                                 const DriveSpec& drive, const CouplerPhases& ph) {
  const Eigen::MatrixXd& u = basis.u;
  const double n2 = static_cast<double>(params.N) * params.N;
  const double n3 = n2 * params.N;
  CouplerEnergies e;
  e.ej_a = std::exp(-u.row(A).squaredNorm() / 4) * params.E_Ja;
  e.ej_b = std::exp(-u.row(B).squaredNorm() / 4) * params.E_Jb;
  e.e_alpha = std::exp(-u.row(C).squaredNorm() / 4) * params.E_Jc;
  e.e_beta = std::exp(-u.row(C).squaredNorm() / (4 * n2)) * params.E_Jc;
  e.ej_c = params.alpha * params.epsilon * bessel_j(0, ph.mu_alpha * drive.delta_phi) *
               std::cos(ph.theta_alpha) * e.e_alpha +
           params.beta / n3 * bessel_j(0, ph.mu_beta * drive.delta_phi) *
               std::cos(ph.theta_beta) * e.e_beta;
  return e;
}

}  // namespace

EffectiveCouplings circuit_first_order(const NormalModeBasis& basis, const CircuitParams& params,
                                       const DriveSpec& drive, const CouplerPhases& ph) {
  const Eigen::MatrixXd& u = basis.u;
  const CouplerEnergies e = dressed_energies(basis, params, drive, ph);
  const double n = params.N;
  const double ae = params.alpha * params.epsilon;
  const double za = ph.mu_alpha * drive.delta_phi, zb = ph.mu_beta * drive.delta_phi;
  const double ej[3] = {e.ej_a, e.ej_b, e.ej_c};

  EffectiveCouplings out;
  const double uca = u(C, A), ucb = u(C, B);
  out.J_ab = -uca * ucb / 2 *
             (ae * bessel_j(1, za) * std::sin(ph.theta_alpha) * e.e_alpha +
              params.beta / n * bessel_j(1, zb) * std::sin(ph.theta_beta) * e.e_beta);
  auto anh = [&](int j) {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += std::pow(u(i, j), 4) * ej[i];
    return -s / 8;
  };
  auto chi = [&](int j, int k) {
    double s = 0;
    for (int i = 0; i < 3; ++i) s += u(i, j) * u(i, j) * u(i, k) * u(i, k) * ej[i];
    return -s / 4;
  };
  out.alpha_a = anh(A);
  out.alpha_b = anh(B);
  out.alpha_c = anh(C);
  out.chi_ab = chi(A, B);
  out.chi_bc = chi(B, C);
  out.chi_ca = chi(C, A);
  out.J_ab_a = -u(C, A) * u(C, A) / 4 * out.J_ab;
  out.J_ab_b = -u(C, B) * u(C, B) / 4 * out.J_ab;
  out.J_ab_c = -u(C, C) * u(C, C) / 4 * out.J_ab;
  out.K_ab = -uca * uca * ucb * ucb / 16 *
             (ae * bessel_j(2, za) * std::cos(ph.theta_alpha) * e.e_alpha +
              params.beta / (n * n * n) * bessel_j(2, zb) * std::cos(ph.theta_beta) * e.e_beta);
  return out;
}

CrossResonanceCouplings cross_resonance_couplings(const NormalModeBasis& basis,
                                                  const CircuitParams& params,
                                                  const DriveSpec& drive,
                                                  const CouplerPhases& ph) {
  const Eigen::MatrixXd& u = basis.u;
  const CouplerEnergies e = dressed_energies(basis, params, drive, ph);
  const double n = params.N;
  const double ae = params.alpha * params.epsilon;
  const double za = ph.mu_alpha * drive.delta_phi, zb = ph.mu_beta * drive.delta_phi;
  const double pa = ae * bessel_j(1, za) * std::cos(ph.theta_alpha) * e.e_alpha / std::sqrt(2.0);
  const double pb = params.beta * bessel_j(1, zb) * std::cos(ph.theta_beta) * e.e_beta /
                    std::sqrt(2.0);
  const double e2 = pa + pb;
  const double e3 = -pa - pb / (n * n);
  CrossResonanceCouplings out;
  out.Omega_a = u(C, A) * e2;
  out.Omega_aa = std::pow(u(C, A), 3) * e3 / 2;
  out.Omega_ab = u(C, A) * u(C, B) * u(C, B) * e3;
  out.Omega_ac = u(C, A) * u(C, C) * u(C, C) * e3;
  return out;
}

double flux_reparametrization(const CircuitParams& params, const DriveSpec& drive,
                              double target_omega_c, bool displace) {
  const double tol = kTwoPi * 1e-9;
  auto residual = [&](double phi) {
    DriveSpec d = drive;
    d.phi_ext_bar = phi;
    return drive_dependent_basis(params, d, displace).frequencies[C] - target_omega_c;
  };
  const double phi0 = drive.phi_ext_bar;
  const double r0 = residual(phi0);
  if (std::abs(r0) < tol) return phi0;

  // Walk downhill in |residual| with a growing step until the sign flips.
  const double h = 1e-4;
  const double slope = (residual(phi0 + h) - residual(phi0 - h)) / (2 * h);
  if (slope == 0) throw NumericalError("flux_reparametrization: flat coupler frequency");
  const double dir = (r0 > 0) == (slope > 0) ? -1.0 : 1.0;
  double lo = phi0, rlo = r0, step = std::min(std::abs(r0 / slope), 0.05);
  double hi = lo, rhi = r0;
  bool bracketed = false;
  for (int it = 0; it < 60; ++it) {
    hi = lo + dir * step;
    try {
      rhi = residual(hi);
    } catch (const NumericalError&) {
      break;
    }
    if ((rhi > 0) != (rlo > 0)) {
      bracketed = true;
      break;
    }
    lo = hi;
    rlo = rhi;
    step *= 1.6;
  }
  if (!bracketed) throw NumericalError("flux_reparametrization: no bracket found");
  if (lo > hi) {
    std::swap(lo, hi);
    std::swap(rlo, rhi);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double rm = residual(mid);
    if (std::abs(rm) < tol || hi - lo < 1e-15) return mid;
    if ((rm > 0) == (rlo > 0)) {
      lo = mid;
      rlo = rm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Gate parse_gate(std::string_view name) {
  std::string key;
  for (char ch : name)
    if (std::isalnum(static_cast<unsigned char>(ch))) key += static_cast<char>(std::tolower(ch));
  if (key == "iswap" || key == "beamsplitter") return Gate::iswap;
  if (key == "twomodesqueezing" || key == "tms") return Gate::two_mode_squeezing;
  if (key == "cz" || key == "isingzz") return Gate::cz;
  if (key == "cnot" || key == "crossresonance") return Gate::cnot;
  if (key == "cswap") return Gate::cswap;
  throw std::invalid_argument("gate_menu: unknown gate '" + std::string(name) + "'");
}

GateMenuEntry gate_menu(double omega_a, double omega_b, Gate gate) {
  const std::string zz = "a^dag a b^dag b";
  switch (gate) {
    case Gate::iswap:
      return {gate, std::abs(omega_a - omega_b), "-i a^dag b + i b^dag a", zz};
    case Gate::two_mode_squeezing:
      return {gate, omega_a + omega_b, "-i a^dag b^dag + i b a", zz};
    case Gate::cz:
      return {gate, std::nullopt, zz, ""};
    case Gate::cnot:
      return {gate, omega_a, "-i (a - a^dag) b^dag b", "-i (a - a^dag) a^dag a"};
    case Gate::cswap:
      return {gate, std::abs(omega_a - omega_b), "-i c^dag c (a^dag b - b^dag a)",
              "-i a^dag b + i b^dag a"};
  }
  throw std::invalid_argument("gate_menu: unknown gate");
}

GateMenuEntry gate_menu(double omega_a, double omega_b, std::string_view gate) {
  return gate_menu(omega_a, omega_b, parse_gate(gate));
}

}  // namespace paragate
