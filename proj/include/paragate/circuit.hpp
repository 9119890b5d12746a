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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "paragate/fock.hpp"

namespace paragate {

// Physical circuit: two transmons (a, b) and a flux-tunable coupler (c) whose
// loop has a single junction (alpha branch) and an N-junction array (beta
// branch). Capacitances in fF; Josephson energies in rad/ns.
struct CircuitParams {
  double C_a = 0, C_b = 0, C_c = 0;
  double C_ab = 0, C_bc = 0, C_ac = 0;
  std::optional<double> C_alpha, C_beta;    // coupler branch capacitances
  std::optional<double> mu_alpha, mu_beta;  // or the flux weights directly
  double E_Ja = 0, E_Jb = 0, E_Jc = 0;
  double alpha = 1;
  double beta = 1;
  int N = 1;
  double epsilon = 1;

  void validate() const;  // throws std::invalid_argument
};

// phi_ext(t) = phi_ext_bar + delta_phi sin(omega_d t). Angles in radians,
// omega_d in rad/ns.
struct DriveSpec {
  double phi_ext_bar = 0;
  double delta_phi = 0;
  double omega_d = 0;
  int n_harmonics = 2;
};

// Three Kerr oscillators with beam-splitter couplings; the coupler frequency
// is modulated as omega_c + delta sin(omega_d t). All in rad/ns.
struct ToyParams {
  double omega_a = 0, omega_b = 0, omega_c = 0;
  double alpha_a = 0, alpha_b = 0, alpha_c = 0;
  double g_ab = 0, g_bc = 0, g_ca = 0;
  double delta = 0;
};

struct ChargingEnergies {
  double E_Ca = 0, E_Cb = 0, E_Cc = 0;
  double E_Cab = 0, E_Cbc = 0, E_Cca = 0;
};

ChargingEnergies charging_energies(const CircuitParams& params);

// Flux weights solving mu_alpha - N mu_beta = 1 and
// C_alpha mu_alpha + C_beta N mu_beta = 0.
std::pair<double, double> mu_weights(double C_alpha, double C_beta, int N);

// Weights in effect for a parameter set: explicit mu's win, then branch
// capacitances, else (1, 0), i.e. the whole modulation on the single junction.
std::pair<double, double> branch_weights(const CircuitParams& params);

// Minimum of the Bessel-averaged static coupler potential,
// -alpha eps J0 cos(phi + mu_a phi_bar) - beta N J0 cos(phi/N + mu_b phi_bar).
double classical_displacement(const CircuitParams& params, const DriveSpec& drive);

// Static phases entering the coupler expansion after the displacement
// phi_c -> phi_c + phi_cls.
struct CouplerPhases {
  double mu_alpha = 1, mu_beta = 0;
  double phi_cls = 0;
  double theta_alpha = 0;  // mu_alpha phi_bar + phi_cls
  double theta_beta = 0;   // mu_beta phi_bar + phi_cls / N
};

CouplerPhases coupler_phases(const CircuitParams& params, const DriveSpec& drive,
                             bool displace = true);

// Coupler form factor F(eta_c) with Bessel renormalization and the given phases.
double coupler_form_factor(const CircuitParams& params, const DriveSpec& drive,
                           const CouplerPhases& phases, double eta);

struct EtaSolution {
  double eta_a = 0, eta_b = 0, eta_c = 0;
};

// Solves F(eta) eta^2 = 8 E_C / E_J for each mode by bisection on
// (1e-6, 10]. Throws NumericalError ("mode softening") if the coupler
// equation has no root there.
EtaSolution solve_eta(const CircuitParams& params, const DriveSpec& drive,
                      bool displace = true);

// Root of F(eta) eta^2 = 8 e_c / e_j for a transmon (F = e^{-eta/4}).
double solve_transmon_eta(double e_c, double e_j);

// An empty matrix stands for zero.
struct HarmonicTerm {
  Eigen::MatrixXcd cos_part;
  Eigen::MatrixXcd sin_part;
};

// H(t) = H0 + sum_n [C_n cos(n w t) + S_n sin(n w t)].
struct HarmonicHamiltonian {
  OperatorMatrix static_part;
  std::map<int, HarmonicTerm> harmonics;
  std::vector<std::string> warnings;

  const FockLayout& layout() const { return static_part.layout; }
  Eigen::MatrixXcd at(double t, double omega_d) const;
  // Adds t-independent c*I; used by gauge checks.
  HarmonicHamiltonian shifted(double c) const;
};

struct CircuitBuildOptions {
  bool displace = true;
  int order = 4;  // truncation of every Josephson expansion
};

// Bare quantities shared by the Hamiltonian builder and the analytics.
struct BareCircuit {
  ChargingEnergies ec;
  EtaSolution eta;
  CouplerPhases phases;
  double omega_a = 0, omega_b = 0, omega_c = 0;
  double form_c = 0;  // F(eta_c)
};

BareCircuit bare_circuit(const CircuitParams& params, const DriveSpec& drive,
                         bool displace = true);

HarmonicHamiltonian build_circuit_hamiltonian(const CircuitParams& params,
                                              const DriveSpec& drive,
                                              const FockLayout& layout,
                                              const CircuitBuildOptions& options = {});

HarmonicHamiltonian build_toy_hamiltonian(const ToyParams& toy, const FockLayout& layout);

// Keeps only matrix elements between Fock states of equal total photon
// number, i.e. drops every monomial with unequal creation/annihilation counts.
HarmonicHamiltonian rwa_strip(const HarmonicHamiltonian& h);

// Bare charge operator n_j = -i (a_j - a_j^dag)/sqrt(2 eta_j).
OperatorMatrix bare_charge_operator(const FockLayout& layout, std::size_t mode, double eta);

}  // namespace paragate
