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

#include <doctest.h>

#include <algorithm>
#include <chrono>

#include "sfq/kernels.hpp"
#include "test_util.hpp"

using namespace sfq;

namespace {

void check_agreement(const CoupledSystem& sys, const std::string& target, int cycles, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  const CycleUnitarySet set = precompute(sys);
  const FitnessKernel kernel(set, target_library(target));
  for (int i = 0; i < 10; ++i) {
    const auto s = testing::random_schedule(sys.channels.size(), cycles, 0.3, gen);
    const FidelityBreakdown fast = kernel.evaluate(s);
    const FidelityBreakdown ref = evaluate_fitness(set, s, kernel.target());
    CHECK(fast.f1 == doctest::Approx(ref.f1).epsilon(1e-10));
    CHECK(fast.f2 == doctest::Approx(ref.f2).epsilon(1e-10));
    CHECK(fast.leakage == doctest::Approx(ref.leakage).epsilon(1e-10));
    const Matrix block = computational_block(evolve_projected(set, s).matrix, sys.num_qubits(), sys.n_levels);
    CHECK((kernel.computational_evolution(s) - block).cwiseAbs().maxCoeff() < 1e-10);
  }
}

}  // namespace

TEST_CASE("chunked kernel matches the serial reference") {
  SUBCASE("one Z channel, cycles not a multiple of the chunk") {
    const CoupledSystem sys = testing::transmon_pair({{1, Axis::Z, 0.03}}, 3, 5);
    check_agreement(sys, "CZ", 253, 1);
  }
  SUBCASE("two X channels") {
    const CoupledSystem sys = testing::transmon_pair({{0, Axis::X, 0.03}, {1, Axis::X, 0.03}}, 3, 4);
    check_agreement(sys, "RY90_I", 301, 2);
  }
  SUBCASE("one qubit") {
    auto q = testing::transmon_ghz(5.0, -0.3, 4);
    const CoupledSystem sys = assemble({q}, 0.0, {{0, Axis::X, 0.05}}, 3, 4, 8e-12);
    check_agreement(sys, "RY90", 97, 3);
  }
  SUBCASE("single cycle") {
    const CoupledSystem sys = testing::transmon_pair({{1, Axis::Z, 0.03}}, 2, 3);
    check_agreement(sys, "CZ", 1, 4);
  }
}

TEST_CASE("chunk length covers eight pulse bits") {
  const auto one = precompute(testing::transmon_pair({{1, Axis::Z, 0.03}}, 2, 3));
  const auto two = precompute(testing::transmon_pair({{0, Axis::X, 0.03}, {1, Axis::X, 0.03}}, 2, 3));
  CHECK(FitnessKernel(one, target_library("CZ")).chunk_length() == 8);
  CHECK(FitnessKernel(two, target_library("CZ")).chunk_length() == 4);
}

TEST_CASE("parallel batch equals serial batch") {
  std::mt19937_64 gen(31);
  const CoupledSystem sys = testing::transmon_pair({{1, Axis::Z, 0.03}}, 3, 4);
  const FitnessKernel kernel(precompute(sys), target_library("CZ"));
  std::vector<PulseSchedule> batch;
  for (int i = 0; i < 37; ++i) batch.push_back(testing::random_schedule(1, 200, 0.4, gen));
  const auto par = kernel.evaluate_batch(batch);
  const auto ser = kernel.evaluate_batch_serial(batch);
  REQUIRE(par.size() == ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    CHECK(par[i].f1 == ser[i].f1);
    CHECK(par[i].f2 == ser[i].f2);
    CHECK(par[i].leakage == ser[i].leakage);
  }
  CHECK(kernel.evaluate_batch({}).empty());
}

TEST_CASE("kernel rejects mismatched targets and schedules") {
  const auto set = precompute(testing::transmon_pair({{1, Axis::Z, 0.03}}, 2, 3));
  CHECK_THROWS(FitnessKernel(set, target_library("RY90")));
  const FitnessKernel kernel(set, target_library("CZ"));
  CHECK_THROWS(kernel.evaluate(PulseSchedule(2, 10)));
}

TEST_CASE("per-evaluation cost is linear in the cycle count") {
  std::mt19937_64 gen(41);
  const CoupledSystem sys = testing::transmon_pair({{1, Axis::Z, 0.03}}, 5, 7);
  const FitnessKernel kernel(precompute(sys), target_library("CZ"));
  auto best_time = [&](int cycles) {
    std::vector<PulseSchedule> batch;
    for (int i = 0; i < 8; ++i) batch.push_back(testing::random_schedule(1, cycles, 0.3, gen));
    double best = 1e30;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      kernel.evaluate_batch_serial(batch);
      best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
  };
  const double ratio = best_time(4000) / best_time(2000);
  CHECK(ratio > 1.6);
  CHECK(ratio < 2.4);
}
