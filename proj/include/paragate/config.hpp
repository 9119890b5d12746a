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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "paragate/analytics.hpp"
#include "paragate/circuit.hpp"
#include "paragate/floquet.hpp"

namespace paragate {

// Schema violation in a run configuration; the message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One fully specified model. For the toy model only omega_d and n_harmonics
// of `drive` matter; the modulation depth lives in ToyParams::delta.
struct ModelPoint {
  std::variant<ToyParams, CircuitParams> model;
  DriveSpec drive;
  FockLayout layout{{5, 5, 5}};
  CircuitBuildOptions build;
  bool rwa = false;  // drop photon-number nonconserving terms

  bool is_toy() const { return std::holds_alternative<ToyParams>(model); }
};

// How the drive frequency is chosen at each point.
enum class DrivePolicy {
  calibrate,  // resonance of the tracked pair, found numerically
  formula,    // dressed static splitting E_second - E_first
  fixed,      // drive.omega_d as given
};

struct FloquetSettings {
  PropagatorOptions propagator;
  double threshold = 0.5;
  DrivePolicy policy = DrivePolicy::calibrate;
  CalibrationMethod method = CalibrationMethod::golden;
  Label first{1, 0, 0};
  Label second{0, 1, 0};
};

struct SweepAxis {
  std::string name;
  double start = 0, stop = 0;
  int count = 1;

  std::vector<double> values() const;
};

struct SpectroscopySettings {
  std::vector<Label> labels{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  int k_min = -15, k_max = 15;
  std::size_t probe_mode = 0;
};

struct RunConfig {
  ModelPoint base;
  FloquetSettings floquet;
  double den_tol = kDefaultDenTol;
  std::vector<SweepAxis> axes;  // zero, one or two; the first varies fastest
  SpectroscopySettings spectroscopy;
  int rabi_periods = 0;         // 0: one swap period
  std::string output_path;
  std::string output_format = "csv";
  std::string source;           // canonical JSON echo of the input
};

// Parses a JSON document. Unknown keys, wrong types and missing required
// values raise ConfigError naming the dotted key path.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// Sets a named sweep parameter (I/O units: GHz, flux in units of 2 pi).
void apply_axis(ModelPoint& point, const std::string& name, double value);

// Names accepted by apply_axis for the given model kind.
std::vector<std::string> axis_names(bool toy);

}  // namespace paragate
