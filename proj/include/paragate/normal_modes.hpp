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

#include <Eigen/Dense>

#include "paragate/circuit.hpp"

namespace paragate {

// H = sum A_ij n_i n_j + sum B_i phi_i^2 (B diagonal). Energies in rad/ns.
struct QuadraticForm {
  Eigen::MatrixXd A;
  Eigen::VectorXd B;
};

// Bare coordinates in terms of normal-mode ladder operators:
// phi_i = sum_k u(i,k) (b_k + b_k^dag)/sqrt 2, n_i = sum_k v(i,k) (b_k - b_k^dag)/(i sqrt 2).
// Column k is the normal mode assigned to bare mode k.
struct NormalModeBasis {
  Eigen::MatrixXd u, v;
  Eigen::VectorXd frequencies;  // rad/ns
  Eigen::VectorXd impedances;   // zeta_k, the phase zero-point scale of mode k
};

NormalModeBasis normal_mode_transform(const QuadraticForm& q);

// Quadratic part of the bare circuit Hamiltonian: A_ii = 4 E_Ci,
// A_ij = 2 E_Cij, B_i = E_Ji F(eta_i)/2.
QuadraticForm circuit_quadratic_form(const CircuitParams& params, const BareCircuit& bare);

// Normal modes of the drive-renormalized quadratic Hamiltonian.
NormalModeBasis drive_dependent_basis(const CircuitParams& params, const DriveSpec& drive,
                                      bool displace = true);

// Number-conserving normal modes of the toy model: orthonormal eigenvectors of
// the single-excitation matrix with diagonal omega_j and off-diagonals -g_jk.
// u = v and impedances are 1.
NormalModeBasis toy_basis(const ToyParams& toy);

}  // namespace paragate
