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

#include <benchmark/benchmark.h>

#include "paragate/reports.hpp"

namespace {

using namespace paragate;

ToyParams toy(double omega_c_ghz) {
  ToyParams t;
  t.omega_a = to_angular(4.0);
  t.omega_b = to_angular(5.5);
  t.omega_c = to_angular(omega_c_ghz);
  t.alpha_a = to_angular(-0.3);
  t.alpha_b = to_angular(-0.2);
  t.alpha_c = to_angular(0.25);
  t.g_ab = to_angular(0.12);
  t.g_bc = to_angular(-0.12);
  t.delta = to_angular(0.3);
  return t;
}

RunConfig sweep_config() {
  RunConfig cfg;
  cfg.base.model = toy(4.5);
  cfg.base.layout = FockLayout({4, 4, 4});
  cfg.floquet.policy = DrivePolicy::formula;
  cfg.floquet.propagator.adaptive = false;
  cfg.floquet.propagator.initial_steps = 64;
  cfg.axes = {{"omega_c", 4.3, 5.1, 16}};
  return cfg;
}

void BM_SweepSerial(benchmark::State& state) {
  const RunConfig cfg = sweep_config();
  for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(cfg, AnalysisMode{}));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
  const RunConfig cfg = sweep_config();
  for (auto _ : state) benchmark::DoNotOptimize(sweep(cfg, AnalysisMode{}));
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

// Argument: Fock levels per mode.
struct Driven {
  HarmonicHamiltonian h;
  StaticReference ref;
  double omega_d;
};

Driven driven(int levels) {
  HarmonicHamiltonian h = build_toy_hamiltonian(toy(4.5), FockLayout({levels, levels, levels}));
  StaticReference ref = static_eigensolve(h.static_part);
  const double w = ref.energy({0, 1, 0}) - ref.energy({1, 0, 0});
  return {std::move(h), std::move(ref), w};
}

constexpr int kSteps = 64;

void BM_FloquetSolve(benchmark::State& state) {
  const Driven d = driven(static_cast<int>(state.range(0)));
  PropagatorOptions o;
  o.adaptive = false;
  o.initial_steps = kSteps;
  o.grid_points = 0;
  for (auto _ : state) {
    const Propagation p = propagate_one_period(d.h, d.omega_d, o);
    benchmark::DoNotOptimize(floquet_decompose(p.U, d.omega_d, d.ref));
  }
}
BENCHMARK(BM_FloquetSolve)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_TimeDomain500(benchmark::State& state) {
  const Driven d = driven(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simulate_time_domain(d.h, d.omega_d, 500, kSteps));
}
BENCHMARK(BM_TimeDomain500)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
