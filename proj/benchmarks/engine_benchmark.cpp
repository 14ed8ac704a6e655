// Copyright 2026 The armform Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "armform/engine.hpp"
#include "armform/scenario.hpp"

#ifndef ARMFORM_SCENARIO_DIR
#error "ARMFORM_SCENARIO_DIR must point at the bundled scenarios"
#endif

namespace {

armform::Scenario bundled() {
  return armform::parse_scenario(std::string(ARMFORM_SCENARIO_DIR) + "/paper_sec5.scenario");
}

void BM_Derivative(benchmark::State& state) {
  const armform::ClosedLoop loop(bundled(), static_cast<int>(state.range(0)));
  const Eigen::VectorXd y = loop.initial_state();
  double t = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(loop.derivative(t, y));
    t += 1e-3;
  }
}
BENCHMARK(BM_Derivative)->Arg(1)->Arg(4);

void BM_Rk4Step(benchmark::State& state) {
  const armform::ClosedLoop loop(bundled());
  const auto f = [&loop](double t, const Eigen::VectorXd& y) { return loop.derivative(t, y); };
  Eigen::VectorXd y = loop.initial_state();
  double t = 0.0;
  for (auto _ : state) {
    y = armform::rk4_step(f, t, y, 1e-3);
    t += 1e-3;
  }
  benchmark::DoNotOptimize(y);
}
BENCHMARK(BM_Rk4Step);

void BM_SimulateOneSecond(benchmark::State& state) {
  armform::Scenario sc = bundled();
  sc.duration = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(armform::simulate(sc));
  state.SetItemsProcessed(state.iterations() * sc.step_count());
}
BENCHMARK(BM_SimulateOneSecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
