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


// Parameter sets shared by the unit tests and the acceptance driver.
#pragma once

#include "paragate/circuit.hpp"
#include "paragate/common.hpp"

namespace paragate::fixtures {

// Toy model of the iSWAP study; omega_c and delta are left to the caller.
inline ToyParams fig2_toy(double omega_c_ghz, double delta_ghz = 0) {
  ToyParams t;
  t.omega_a = to_angular(4.0);
  t.omega_b = to_angular(5.5);
  t.omega_c = to_angular(omega_c_ghz);
  t.alpha_a = to_angular(-0.3);
  t.alpha_b = to_angular(-0.2);
  t.alpha_c = to_angular(0.25);
  t.g_ab = to_angular(0.12);
  t.g_bc = to_angular(-0.12);
  t.g_ca = 0;
  t.delta = to_angular(delta_ghz);
  return t;
}

// Toy model with a vanishing sum of inverse anharmonicities for alpha_c = 0.1 GHz.
inline ToyParams chi_zero_toy(double omega_c_ghz, double alpha_c_ghz = 0.1) {
  ToyParams t;
  t.omega_a = to_angular(4.0);
  t.omega_b = to_angular(5.75);
  t.omega_c = to_angular(omega_c_ghz);
  t.alpha_a = to_angular(-0.2);
  t.alpha_b = to_angular(-0.2);
  t.alpha_c = to_angular(alpha_c_ghz);
  t.g_ab = 0;
  t.g_ca = to_angular(0.05);
  t.g_bc = to_angular(-0.05);
  return t;
}

// Transmon pair with an inductively shunted coupler.
inline CircuitParams fig3_circuit() {
  CircuitParams p;
  p.C_a = 134.205;
  p.C_b = 134.218;
  p.C_c = 75.987;
  p.C_ac = 11.11;
  p.C_bc = 11.22;
  p.C_ab = 0;
  p.E_Ja = to_angular(37);
  p.E_Jb = to_angular(27);
  p.E_Jc = to_angular(50);
  p.alpha = 0.258;
  p.beta = 1;
  p.N = 3;
  return p;
}

inline DriveSpec flux_drive(double bar_over_2pi, double delta_over_2pi, double omega_d = 0) {
  DriveSpec d;
  d.phi_ext_bar = kTwoPi * bar_over_2pi;
  d.delta_phi = kTwoPi * delta_over_2pi;
  d.omega_d = omega_d;
  return d;
}

}  // namespace paragate::fixtures
