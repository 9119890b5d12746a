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

#include <complex>

#include <Eigen/Dense>

namespace paragate::linalg {

using cplx = std::complex<double>;

struct HermitianEig {
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns
};

// Dense Hermitian eigensolver (LAPACK zheevr). Only the upper triangle is read.
HermitianEig hermitian_eig(const Eigen::MatrixXcd& h);

struct UnitaryEig {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
};

// Eigenpairs of a unitary matrix from its complex Schur form. For a normal
// matrix the Schur vectors are eigenvectors, so the basis is orthonormal by
// construction even when eigenvalues are nearly degenerate.
UnitaryEig unitary_eig(const Eigen::MatrixXcd& u);

// exp(-i h dt) for Hermitian h.
Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double dt);

// Largest absolute entry.
double max_abs(const Eigen::MatrixXcd& m);

double hermiticity_defect(const Eigen::MatrixXcd& m);
double unitarity_defect(const Eigen::MatrixXcd& m);

// Pins the BLAS backend to one thread; called inside OpenMP workers so the
// two levels of threading do not oversubscribe cores.
void set_blas_threads(int n);

}  // namespace paragate::linalg
