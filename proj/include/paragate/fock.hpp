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
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace paragate {

using cplx = std::complex<double>;

// Truncated tensor-product Fock space. Mode 0 is the most significant index,
// so for dims {da, db, dc} the state |na nb nc> sits at (na*db + nb)*dc + nc.
class FockLayout {
 public:
  FockLayout() = default;
  explicit FockLayout(std::vector<int> dims);

  std::size_t modes() const { return dims_.size(); }
  int dim(std::size_t mode) const { return dims_.at(mode); }
  const std::vector<int>& dims() const { return dims_; }
  Eigen::Index total() const { return total_; }
  Eigen::Index stride(std::size_t mode) const { return strides_.at(mode); }

  Eigen::Index index(std::span<const int> occupation) const;
  std::vector<int> occupation(Eigen::Index index) const;
  int occupation(Eigen::Index index, std::size_t mode) const {
    return static_cast<int>((index / strides_[mode]) % dims_[mode]);
  }
  int total_number(Eigen::Index index) const;

  bool operator==(const FockLayout&) const = default;

 private:
  std::vector<int> dims_;
  std::vector<Eigen::Index> strides_;
  Eigen::Index total_ = 0;
};

enum class OperatorKind { generic, observable, propagator };
enum class Units { dimensionless, angular_frequency };

struct OperatorMatrix {
  FockLayout layout;
  Eigen::MatrixXcd m;
  OperatorKind kind = OperatorKind::generic;
  Units units = Units::dimensionless;

  // Throws std::logic_error when the tagged kind is violated
  // (observable: Hermitian to 1e-12, propagator: unitary to 1e-9).
  void check() const;
};

OperatorMatrix annihilator(const FockLayout& layout, std::size_t mode);
OperatorMatrix creator(const FockLayout& layout, std::size_t mode);
OperatorMatrix number_operator(const FockLayout& layout, std::size_t mode);
OperatorMatrix identity(const FockLayout& layout);

struct Quadratures {
  OperatorMatrix phi;
  OperatorMatrix n;
};

// phi = sqrt(scale/2)(a + a^dag), n = -i sqrt(1/(2 scale))(a - a^dag).
Quadratures quadratures(const FockLayout& layout, std::size_t mode, double scale);

enum class TrigKind { cos, sin };

// Coefficients c_mn of a^dag^m a^n in the normal-ordered expansion of
// cos(phi) or sin(phi) with phi = sqrt(eta/2)(a + a^dag), including the
// e^{-eta/4} prefactor, for m + n <= max_total_order.
using CoefficientTable = std::map<std::pair<int, int>, cplx>;
CoefficientTable normal_ordered_trig(TrigKind kind, double eta, int max_total_order);

// Sum c_mn a^dag^m a^n for a single mode.
OperatorMatrix materialize(const CoefficientTable& coeffs, const FockLayout& layout,
                           std::size_t mode);

// Same polynomial in the collective operator A = sum_b (u_b/sqrt(eta)) b with
// eta = sum_b u_b^2, so that phi = sum_b (u_b/sqrt 2)(b + b^dag) equals
// sqrt(eta/2)(A + A^dag) and [A, A^dag] = 1. The table must have been
// generated with that eta.
OperatorMatrix materialize(const CoefficientTable& coeffs, const FockLayout& layout,
                           std::span<const double> u_row);

// Normal-ordered cos/sin of the multimode phase sum_b (u_b/sqrt 2)(b + b^dag).
OperatorMatrix trig_of_phase(TrigKind kind, const FockLayout& layout,
                             std::span<const double> u_row, int max_total_order);

}  // namespace paragate
