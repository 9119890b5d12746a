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

#include "paragate/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace paragate::linalg {

HermitianEig hermitian_eig(const Eigen::MatrixXcd& h) {
  const lapack_int n = static_cast<lapack_int>(h.rows());
  if (h.cols() != h.rows()) throw std::invalid_argument("hermitian_eig: matrix not square");
  HermitianEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  if (n == 0) return out;
  // zheevr rather than zheevd: the divide-and-conquer path runs real dgemm
  // calls that OpenBLAS 0.3.20 gets wrong on some AVX-512 cores.
  Eigen::MatrixXcd a = h;
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  lapack_int info = LAPACKE_zheevr(LAPACK_COL_MAJOR, 'V', 'A', 'U', n, a.data(), n, 0, 0, 0, 0,
                                   0.0, &found, out.values.data(), out.vectors.data(), n,
                                   support.data());
  if (info != 0 || found != n)
    throw std::runtime_error("zheevr failed, info=" + std::to_string(info));
  return out;
}

namespace {
lapack_logical no_select(const lapack_complex_double*) { return 0; }
}  // namespace

UnitaryEig unitary_eig(const Eigen::MatrixXcd& u) {
  const lapack_int n = static_cast<lapack_int>(u.rows());
  if (u.cols() != u.rows()) throw std::invalid_argument("unitary_eig: matrix not square");
  Eigen::MatrixXcd t = u;
  UnitaryEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  if (n == 0) return out;
  lapack_int sdim = 0;
  lapack_int info = LAPACKE_zgees(LAPACK_COL_MAJOR, 'V', 'N', no_select, n, t.data(), n, &sdim,
                                  out.values.data(), out.vectors.data(), n);
  if (info != 0) throw std::runtime_error("zgees failed, info=" + std::to_string(info));
  return out;
}

Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double dt) {
  HermitianEig e = hermitian_eig(h);
  Eigen::VectorXcd phase(e.values.size());
  for (Eigen::Index i = 0; i < phase.size(); ++i)
    phase[i] = std::polar(1.0, -e.values[i] * dt);
  Eigen::MatrixXcd scaled = e.vectors * phase.asDiagonal();
  return scaled * e.vectors.adjoint();
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Eigen::MatrixXcd& m) { return max_abs(m - m.adjoint()); }

double unitarity_defect(const Eigen::MatrixXcd& m) {
  return max_abs(m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols()));
}

void set_blas_threads(int n) { openblas_set_num_threads(n); }

}  // namespace paragate::linalg
