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

#include "paragate/normal_modes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "paragate/common.hpp"

namespace paragate {

namespace {

// perm[k] = eigenvector index assigned to bare mode k, chosen to maximize the
// summed squared weights w(bare, eigen); ties go to the assignment whose
// eigenvalues sit closest to the bare reference values.
std::vector<int> assign_modes(const Eigen::MatrixXd& w, const Eigen::VectorXd& eig,
                              const Eigen::VectorXd& bare_ref) {
  const int n = static_cast<int>(w.rows());
  std::vector<int> perm(n), best;
  std::iota(perm.begin(), perm.end(), 0);
  double best_score = -1, best_dist = std::numeric_limits<double>::infinity();
  do {
    double score = 0, dist = 0;
    for (int k = 0; k < n; ++k) {
      score += w(k, perm[k]);
      dist += std::abs(eig[perm[k]] - bare_ref[k]);
    }
    if (score > best_score + 1e-12 ||
        (std::abs(score - best_score) <= 1e-12 && dist < best_dist)) {
      best_score = score;
      best_dist = dist;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

NormalModeBasis normal_mode_transform(const QuadraticForm& q) {
  const Eigen::Index n = q.A.rows();
  if (q.A.cols() != n || q.B.size() != n || n == 0)
    throw std::invalid_argument("normal_mode_transform: inconsistent shapes");
  if (n > 8) throw std::invalid_argument("normal_mode_transform: at most 8 modes supported");
  if ((q.A - q.A.transpose()).cwiseAbs().maxCoeff() > 1e-12 * q.A.cwiseAbs().maxCoeff())
    throw std::invalid_argument("normal_mode_transform: A must be symmetric");
  if ((q.B.array() <= 0).any())
    throw std::invalid_argument("normal_mode_transform: B entries must be positive");

  // Step 1: rescale to a common inductive energy B = (prod B_ii)^(1/2). Any
  // positive B gives the same final basis.
  const double b = std::sqrt(q.B.prod());
  const Eigen::VectorXd f = (b / q.B.array()).sqrt();
  const Eigen::MatrixXd a_prime = q.A.array() / (f * f.transpose()).array();

  // Step 2: orthonormal diagonalization; S holds eigenvectors on its rows.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_prime);
  if (es.info() != Eigen::Success)
    throw NumericalError("normal_mode_transform: eigensolver failed");
  const Eigen::VectorXd d_sorted = es.eigenvalues();
  if ((d_sorted.array() <= 0).any())
    throw NumericalError("normal_mode_transform: nonpositive capacitive eigenvalue (unstable mode)");
  const Eigen::MatrixXd s_sorted = es.eigenvectors().transpose();

  // Label rows by their dominant bare component.
  Eigen::MatrixXd weight(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index m = 0; m < n; ++m) weight(k, m) = s_sorted(m, k) * s_sorted(m, k);
  Eigen::VectorXd freq_sorted = 2 * (d_sorted.array() * b).sqrt();
  Eigen::VectorXd bare_freq = 2 * (q.A.diagonal().array() * q.B.array()).sqrt();
  const std::vector<int> perm = assign_modes(weight, freq_sorted, bare_freq);

  Eigen::MatrixXd s(n, n);
  Eigen::VectorXd d(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    s.row(k) = s_sorted.row(perm[k]);
    d[k] = d_sorted[perm[k]];
    if (s(k, k) < 0) s.row(k) *= -1;
  }

  // Step 3: undo the rescaling.
  NormalModeBasis out;
  Eigen::MatrixXd big_u(n, n), big_v(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < n; ++k) {
      big_u(i, k) = f[i] * s(k, i) / f[k];
      big_v(i, k) = s(k, i) * f[k] / f[i];
    }
  out.frequencies = 2 * (d.array() * b).sqrt();
  out.impedances = f.array().square() * (d.array() / b).sqrt();
  out.u = big_u * out.impedances.array().sqrt().matrix().asDiagonal();
  out.v = big_v * out.impedances.array().rsqrt().matrix().asDiagonal();
  return out;
}

QuadraticForm circuit_quadratic_form(const CircuitParams& params, const BareCircuit& bare) {
  QuadraticForm q;
  q.A.resize(3, 3);
  q.A << 4 * bare.ec.E_Ca, 2 * bare.ec.E_Cab, 2 * bare.ec.E_Cca,
      2 * bare.ec.E_Cab, 4 * bare.ec.E_Cb, 2 * bare.ec.E_Cbc,
      2 * bare.ec.E_Cca, 2 * bare.ec.E_Cbc, 4 * bare.ec.E_Cc;
  q.B.resize(3);
  q.B << params.E_Ja * std::exp(-bare.eta.eta_a / 4) / 2,
      params.E_Jb * std::exp(-bare.eta.eta_b / 4) / 2, params.E_Jc * bare.form_c / 2;
  return q;
}

NormalModeBasis drive_dependent_basis(const CircuitParams& params, const DriveSpec& drive,
                                      bool displace) {
  const BareCircuit bare = bare_circuit(params, drive, displace);
  return normal_mode_transform(circuit_quadratic_form(params, bare));
}

NormalModeBasis toy_basis(const ToyParams& toy) {
  Eigen::Matrix3d m;
  m << toy.omega_a, -toy.g_ab, -toy.g_ca,
      -toy.g_ab, toy.omega_b, -toy.g_bc,
      -toy.g_ca, -toy.g_bc, toy.omega_c;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  const Eigen::Matrix3d vecs = es.eigenvectors();  // (bare, sorted normal)
  const Eigen::Vector3d vals = es.eigenvalues();
  Eigen::MatrixXd weight = vecs.array().square();
  const std::vector<int> perm = assign_modes(weight, vals, m.diagonal());
  NormalModeBasis out;
  out.u.resize(3, 3);
  out.frequencies.resize(3);
  for (int k = 0; k < 3; ++k) {
    out.u.col(k) = vecs.col(perm[k]);
    if (out.u(k, k) < 0) out.u.col(k) *= -1;
    out.frequencies[k] = vals[perm[k]];
  }
  out.v = out.u;
  out.impedances = Eigen::VectorXd::Ones(3);
  return out;
}

}  // namespace paragate
