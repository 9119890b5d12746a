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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "paragate/circuit.hpp"
#include "paragate/common.hpp"
#include "paragate/normal_modes.hpp"

namespace paragate {

// Perturbative bookkeeping parameter; every order is evaluated at lambda = 1.
inline constexpr double kLambda = 1.0;

// Resonant-denominator cutoff for second-order expressions (1 MHz).
inline constexpr double kDefaultDenTol = kTwoPi * 1e-3;

// Coefficients of the rotating-frame gate Hamiltonian. All rad/ns.
struct EffectiveCouplings {
  double J_ab = 0;
  double alpha_a = 0, alpha_b = 0, alpha_c = 0;
  double chi_ab = 0, chi_bc = 0, chi_ca = 0;
  double J_ab_a = 0, J_ab_b = 0, J_ab_c = 0;  // photon-number-conditioned beam splitter
  double K_ab = 0;                            // photon-pair beam splitter
  int order = 1;
};

struct CrossResonanceCouplings {
  double Omega_a = 0, Omega_aa = 0, Omega_ab = 0, Omega_ac = 0;
};

// Second-order cross-Kerr corrections for the toy model. `bare_denominators`
// uses normal-mode frequency differences only; `dressed_denominators` shifts
// each denominator by the first-order anharmonic energies.
struct SecondOrderChi {
  double bare_denominators = 0;
  double dressed_denominators = 0;
  bool bare_divergent = false;
  bool dressed_divergent = false;
  double min_bare_denominator = 0;
  double min_dressed_denominator = 0;
};

EffectiveCouplings toy_first_order(const NormalModeBasis& basis, const ToyParams& toy);

SecondOrderChi toy_second_order_chi(const NormalModeBasis& basis, const ToyParams& toy,
                                    double den_tol = kDefaultDenTol);

// Gate rate with the Bessel-function dressing of the modulated coupler.
double toy_bessel_gate_rate(const NormalModeBasis& basis, const ToyParams& toy, double omega_d);

EffectiveCouplings circuit_first_order(const NormalModeBasis& basis, const CircuitParams& params,
                                       const DriveSpec& drive, const CouplerPhases& phases);

// Drive at omega_d = omega_a (not checked).
CrossResonanceCouplings cross_resonance_couplings(const NormalModeBasis& basis,
                                                  const CircuitParams& params,
                                                  const DriveSpec& drive,
                                                  const CouplerPhases& phases);

// phi' with omega_c(phi') = target, where omega_c is the coupler normal-mode
// frequency of drive_dependent_basis. Residual below 1e-9 GHz.
double flux_reparametrization(const CircuitParams& params, const DriveSpec& drive,
                              double target_omega_c, bool displace = true);

enum class Gate { iswap, two_mode_squeezing, cz, cnot, cswap };

struct GateMenuEntry {
  Gate gate;
  std::optional<double> omega_d;  // rad/ns; empty when no drive is needed
  std::string bosonic_operator;
  std::string dominant_unwanted;  // empty when none is listed
};

Gate parse_gate(std::string_view name);
GateMenuEntry gate_menu(double omega_a, double omega_b, Gate gate);
GateMenuEntry gate_menu(double omega_a, double omega_b, std::string_view gate);

}  // namespace paragate
