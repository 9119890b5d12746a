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

#include "paragate/fock.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "paragate/linalg.hpp"

namespace paragate {

FockLayout::FockLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("FockLayout: no modes");
  for (int d : dims_)
    if (d < 2) throw std::invalid_argument("FockLayout: every mode needs at least 2 levels");
  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size() - 1; k > 0; --k) strides_[k - 1] = strides_[k] * dims_[k];
  total_ = strides_[0] * dims_[0];
}

Eigen::Index FockLayout::index(std::span<const int> occupation) const {
  if (occupation.size() != dims_.size())
    throw std::invalid_argument("FockLayout::index: occupation has wrong length");
  Eigen::Index idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (occupation[k] < 0 || occupation[k] >= dims_[k])
      throw std::out_of_range("FockLayout::index: occupation outside truncation");
    idx += occupation[k] * strides_[k];
  }
  return idx;
}

std::vector<int> FockLayout::occupation(Eigen::Index index) const {
  std::vector<int> occ(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) occ[k] = occupation(index, k);
  return occ;
}

int FockLayout::total_number(Eigen::Index index) const {
  int n = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) n += occupation(index, k);
  return n;
}

void OperatorMatrix::check() const {
  if (m.rows() != layout.total() || m.cols() != layout.total())
    throw std::logic_error("OperatorMatrix: shape does not match layout");
  if (kind == OperatorKind::observable && linalg::hermiticity_defect(m) >= 1e-12)
    throw std::logic_error("OperatorMatrix: observable is not Hermitian");
  if (kind == OperatorKind::propagator && linalg::unitarity_defect(m) >= 1e-9)
    throw std::logic_error("OperatorMatrix: propagator is not unitary");
}

namespace {

void check_mode(const FockLayout& layout, std::size_t mode) {
  if (mode >= layout.modes())
    throw std::out_of_range("mode " + std::to_string(mode) + " out of range");
}

OperatorMatrix zero(const FockLayout& layout, OperatorKind kind) {
  return {layout, Eigen::MatrixXcd::Zero(layout.total(), layout.total()), kind,
          Units::dimensionless};
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

OperatorMatrix annihilator(const FockLayout& layout, std::size_t mode) {
  check_mode(layout, mode);
  OperatorMatrix a = zero(layout, OperatorKind::generic);
  const Eigen::Index s = layout.stride(mode);
  for (Eigen::Index i = 0; i < layout.total(); ++i) {
    int n = layout.occupation(i, mode);
    if (n > 0) a.m(i - s, i) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

OperatorMatrix creator(const FockLayout& layout, std::size_t mode) {
  OperatorMatrix a = annihilator(layout, mode);
  a.m.adjointInPlace();
  return a;
}

OperatorMatrix number_operator(const FockLayout& layout, std::size_t mode) {
  check_mode(layout, mode);
  OperatorMatrix n = zero(layout, OperatorKind::observable);
  for (Eigen::Index i = 0; i < layout.total(); ++i) n.m(i, i) = layout.occupation(i, mode);
  return n;
}

OperatorMatrix identity(const FockLayout& layout) {
  return {layout, Eigen::MatrixXcd::Identity(layout.total(), layout.total()),
          OperatorKind::observable, Units::dimensionless};
}

Quadratures quadratures(const FockLayout& layout, std::size_t mode, double scale) {
  if (!(scale > 0)) throw std::invalid_argument("quadratures: scale must be positive");
  Eigen::MatrixXcd a = annihilator(layout, mode).m;
  Eigen::MatrixXcd ad = a.adjoint();
  Quadratures q{zero(layout, OperatorKind::observable), zero(layout, OperatorKind::observable)};
  q.phi.m = std::sqrt(scale / 2) * (a + ad);
  q.n.m = cplx(0, -std::sqrt(1 / (2 * scale))) * (a - ad);
  return q;
}

CoefficientTable normal_ordered_trig(TrigKind kind, double eta, int max_total_order) {
  if (max_total_order < 0) throw std::invalid_argument("normal_ordered_trig: negative order");
  if (!(eta > 0)) throw std::invalid_argument("normal_ordered_trig: eta must be positive");
  CoefficientTable table;
  const double pre = std::exp(-eta / 4);
  const int parity = kind == TrigKind::cos ? 0 : 1;
  for (int total = parity; total <= max_total_order; total += 2) {
    // (i sqrt(eta/2))^total, real or imaginary part depending on parity.
    double mag = pre * std::pow(eta / 2, total / 2.0) * ((total / 2) % 2 == 0 ? 1.0 : -1.0);
    for (int m = 0; m <= total; ++m) {
      int n = total - m;
      table[{m, n}] = mag / (factorial(m) * factorial(n));
    }
  }
  return table;
}

namespace {

int max_order(const CoefficientTable& coeffs) {
  int order = -1;
  for (const auto& [mn, c] : coeffs) order = std::max(order, mn.first + mn.second);
  return order;
}

}  // namespace

OperatorMatrix materialize(const CoefficientTable& coeffs, const FockLayout& layout,
                           std::size_t mode) {
  check_mode(layout, mode);
  const int d = layout.dim(mode);
  if (max_order(coeffs) > 2 * (d - 1))
    throw std::invalid_argument("materialize: truncation too small for requested order");
  OperatorMatrix out = zero(layout, OperatorKind::generic);
  const Eigen::Index s = layout.stride(mode);
  for (Eigen::Index i = 0; i < layout.total(); ++i) {
    const int k = layout.occupation(i, mode);
    for (const auto& [mn, c] : coeffs) {
      const auto [m, n] = mn;
      if (n > k) continue;
      const int target = k - n + m;
      if (target >= d) continue;
      // <target| a^dag^m a^n |k> = sqrt(k!/(k-n)!) sqrt(target!/(k-n)!)
      double amp = std::sqrt(factorial(k) * factorial(target)) / factorial(k - n);
      out.m(i + (target - k) * s, i) += c * amp;
    }
  }
  return out;
}

OperatorMatrix materialize(const CoefficientTable& coeffs, const FockLayout& layout,
                           std::span<const double> u_row) {
  if (u_row.size() != layout.modes())
    throw std::invalid_argument("materialize: u-row length must equal the number of modes");
  double eta = 0;
  int cap = 0;
  for (std::size_t k = 0; k < u_row.size(); ++k) {
    eta += u_row[k] * u_row[k];
    if (u_row[k] != 0) cap += layout.dim(k) - 1;
  }
  OperatorMatrix out = zero(layout, OperatorKind::generic);
  if (coeffs.empty()) return out;
  if (!(eta > 0)) throw std::invalid_argument("materialize: u-row is identically zero");
  if (max_order(coeffs) > 2 * cap)
    throw std::invalid_argument("materialize: truncation too small for requested order");

  Eigen::MatrixXcd big_a = Eigen::MatrixXcd::Zero(layout.total(), layout.total());
  for (std::size_t k = 0; k < u_row.size(); ++k)
    if (u_row[k] != 0) big_a += (u_row[k] / std::sqrt(eta)) * annihilator(layout, k).m;

  int top = 0;
  for (const auto& [mn, c] : coeffs) top = std::max({top, mn.first, mn.second});
  std::vector<Eigen::MatrixXcd> pow_a(top + 1);
  pow_a[0] = Eigen::MatrixXcd::Identity(layout.total(), layout.total());
  for (int p = 1; p <= top; ++p) pow_a[p] = big_a * pow_a[p - 1];
  for (const auto& [mn, c] : coeffs) {
    if (c == cplx(0)) continue;
    out.m.noalias() += c * (pow_a[mn.first].adjoint() * pow_a[mn.second]);
  }
  return out;
}

OperatorMatrix trig_of_phase(TrigKind kind, const FockLayout& layout,
                             std::span<const double> u_row, int max_total_order) {
  double eta = 0;
  for (double u : u_row) eta += u * u;
  return materialize(normal_ordered_trig(kind, eta, max_total_order), layout, u_row);
}

}  // namespace paragate
