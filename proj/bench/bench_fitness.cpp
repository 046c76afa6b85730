// Copyright 2026 The sfqgate Authors
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

// Fitness throughput on the 10 ns Z-controlled CZ problem: serial reference
// evolution, chunked kernel, and the OpenMP batch evaluator.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "sfq/kernels.hpp"
#include "sfq/qubit_models.hpp"

namespace {

using namespace sfq;

const CycleUnitarySet& problem() {
  static const CycleUnitarySet set = [] {
    auto q0 = build_transmon({ghz_to_angular(3.9), ghz_to_angular(-0.225), 7});
    auto q1 = build_transmon({ghz_to_angular(3.5), ghz_to_angular(-0.225), 7});
    return precompute(assemble({q0, q1}, ghz_to_angular(0.05), {{1, Axis::Z, 0.03}}, 5, 7, 8e-12));
  }();
  return set;
}

std::vector<PulseSchedule> population(int size, int cycles) {
  std::mt19937_64 gen(1);
  std::bernoulli_distribution bit(0.3);
  std::vector<PulseSchedule> out;
  for (int i = 0; i < size; ++i) {
    PulseSchedule s(1, cycles);
    for (int t = 0; t < cycles; ++t) s.set(0, t, bit(gen));
    out.push_back(s);
  }
  return out;
}

void BM_SerialReference(benchmark::State& state) {
  const auto pop = population(1, static_cast<int>(state.range(0)));
  const GateTarget target = target_library("CZ");
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_fitness(problem(), pop[0], target));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SerialReference)->Arg(625)->Arg(1250)->Arg(2500)->Unit(benchmark::kMillisecond);

void BM_Kernel(benchmark::State& state) {
  const auto pop = population(1, static_cast<int>(state.range(0)));
  const FitnessKernel kernel(problem(), target_library("CZ"));
  for (auto _ : state) benchmark::DoNotOptimize(kernel.evaluate(pop[0]));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Kernel)->Arg(625)->Arg(1250)->Arg(2500)->Unit(benchmark::kMillisecond);

void BM_BatchSerial(benchmark::State& state) {
  const auto pop = population(60, 1250);
  const FitnessKernel kernel(problem(), target_library("CZ"));
  for (auto _ : state) benchmark::DoNotOptimize(kernel.evaluate_batch_serial(pop));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pop.size()));
}
BENCHMARK(BM_BatchSerial)->Unit(benchmark::kMillisecond);

void BM_BatchParallel(benchmark::State& state) {
  const auto pop = population(60, 1250);
  const FitnessKernel kernel(problem(), target_library("CZ"));
  omp_set_num_threads(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel.evaluate_batch(pop));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pop.size()));
}
BENCHMARK(BM_BatchParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
