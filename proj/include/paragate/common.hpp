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

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace paragate {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Library code works in angular frequency (rad/ns); inputs and reports are
// ordinary frequencies in GHz.
constexpr double to_angular(double ghz) { return kTwoPi * ghz; }
constexpr double to_ghz(double angular) { return angular / kTwoPi; }

// Bessel function of the first kind for integer order and any real argument
// (std::cyl_bessel_j only accepts x >= 0).
inline double bessel_j(int n, double x) {
  double v = std::cyl_bessel_j(static_cast<double>(n), std::abs(x));
  return (x < 0 && n % 2 != 0) ? -v : v;
}

// Failure of a numerical procedure on valid input (no bracket, softened mode,
// step budget exhausted). Distinct from std::invalid_argument, which signals
// a violated precondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paragate
