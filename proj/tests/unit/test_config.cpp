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


#include <doctest.h>

#include <string>

#include "paragate/config.hpp"

using namespace paragate;

namespace {

const char* kToy = R"({
  "toy": {"omega_a": 4.0, "omega_b": 5.5, "omega_c": 4.5, "alpha_a": -0.3,
          "alpha_b": -0.2, "alpha_c": 0.25, "g_ab": 0.12, "g_bc": -0.12},
  "drive": {"delta": 0.3, "omega_d": "formula", "pair": ["100", "010"]},
  "numerics": {"dims": [3, 4, 5], "steps": 64, "adaptive": false, "grid_points": 0,
               "integrator": "midpoint", "den_tol": 0.002},
  "sweep": {"axes": [{"name": "omega_c", "start": 4.2, "stop": 5.3, "count": 12},
                     {"name": "delta", "start": 0.1, "stop": 0.3, "count": 3}]},
  "output": {"path": "out.csv"}
})";

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("toy configuration") {
  const RunConfig cfg = parse_config(kToy);
  REQUIRE(cfg.base.is_toy());
  const auto& t = std::get<ToyParams>(cfg.base.model);
  CHECK(to_ghz(t.omega_c) == doctest::Approx(4.5));
  CHECK(to_ghz(t.delta) == doctest::Approx(0.3));
  CHECK(t.g_ca == 0);
  CHECK(cfg.floquet.policy == DrivePolicy::formula);
  CHECK(cfg.floquet.propagator.integrator == Integrator::midpoint);
  CHECK_FALSE(cfg.floquet.propagator.adaptive);
  CHECK(cfg.base.layout.dims() == std::vector<int>{3, 4, 5});
  CHECK(to_ghz(cfg.den_tol) == doctest::Approx(0.002));
  REQUIRE(cfg.axes.size() == 2);
  CHECK(cfg.axes[0].values().size() == 12);
  CHECK(cfg.axes[0].values().back() == doctest::Approx(5.3));
  CHECK(cfg.output_path == "out.csv");
  CHECK_FALSE(cfg.source.empty());
}

TEST_CASE("circuit configuration") {
  const RunConfig cfg = parse_config(R"({
    "circuit": {"C_a": 134.205, "C_b": 134.218, "C_c": 75.987, "C_ac": 11.11, "C_bc": 11.22,
                "E_Ja": 37, "E_Jb": 27, "E_Jc": 50, "alpha": 0.258, "beta": 1, "N": 3},
    "drive": {"phi_ext_bar_over_2pi": 0.3, "delta_phi_over_2pi": 0.03, "omega_d": 1.2,
              "n_harmonics": 3},
    "spectroscopy": {"labels": ["000", "100"], "k_range": [-3, 4], "probe_mode": 1}
  })");
  REQUIRE_FALSE(cfg.base.is_toy());
  const auto& p = std::get<CircuitParams>(cfg.base.model);
  CHECK(p.N == 3);
  CHECK(to_ghz(p.E_Jc) == doctest::Approx(50));
  CHECK(cfg.base.drive.phi_ext_bar == doctest::Approx(kTwoPi * 0.3));
  CHECK(cfg.floquet.policy == DrivePolicy::fixed);
  CHECK(to_ghz(cfg.base.drive.omega_d) == doctest::Approx(1.2));
  CHECK(cfg.base.drive.n_harmonics == 3);
  CHECK(cfg.spectroscopy.labels.size() == 2);
  CHECK(cfg.spectroscopy.k_min == -3);
  CHECK(cfg.spectroscopy.probe_mode == 1);
}

TEST_CASE("schema errors name the offending key") {
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": 6, "omega_x": 1}})")
            .find("toy.omega_x") != std::string::npos);
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5}})").find("toy.omega_c") !=
        std::string::npos);
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": "x"}})").find("toy.omega_c") !=
        std::string::npos);
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": 6},
                     "numerics": {"dims": [3, 1, 3]}})").find("numerics.dims") != std::string::npos);
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": 6},
                     "sweep": {"axes": [{"name": "E_Ja", "start": 1}]}})")
            .find("sweep.axes[0].name") != std::string::npos);
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": 6}, "extra": 1})")
            .find("extra") != std::string::npos);
  CHECK(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": 6},
                     "drive": {"pair": ["100", "0x0"]}})").find("drive.pair") != std::string::npos);
  CHECK_FALSE(error_of(R"({"toy": {"omega_a": 4, "omega_b": 5, "omega_c": 6},
                           "circuit": {}})").empty());
  CHECK_FALSE(error_of("{not json").empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("sweep axes") {
  RunConfig cfg = parse_config(kToy);
  ModelPoint p = cfg.base;
  apply_axis(p, "g_ca", 0.05);
  apply_axis(p, "omega_d", 1.4);
  CHECK(to_ghz(std::get<ToyParams>(p.model).g_ca) == doctest::Approx(0.05));
  CHECK(to_ghz(p.drive.omega_d) == doctest::Approx(1.4));
  CHECK_THROWS_AS(apply_axis(p, "E_Ja", 1), std::invalid_argument);
  for (const auto& name : axis_names(false)) CHECK(name != "omega_c");
  SweepAxis single{"delta", 0.2, 0.9, 1};
  CHECK(single.values() == std::vector<double>{0.2});
}

TEST_CASE("shipped configurations load") {
  const RunConfig toy = load_config(PARAGATE_CONFIG_DIR "/toy_fig2.json");
  CHECK(toy.base.is_toy());
  CHECK(toy.floquet.method == CalibrationMethod::two_level);
  CHECK(toy.axes.at(0).count == 50);
  const RunConfig circuit = load_config(PARAGATE_CONFIG_DIR "/circuit_fig3.json");
  CHECK_FALSE(circuit.base.is_toy());
  CHECK(std::get<CircuitParams>(circuit.base.model).N == 3);
  CHECK(circuit.base.layout.total() == 216);
  CHECK(circuit.axes.size() == 2);
}
