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

#include <set>

#include "sfq/search.hpp"
#include "test_util.hpp"

using namespace sfq;

namespace {

FitnessKernel small_kernel(const std::string& target = "CZ") {
  return FitnessKernel(precompute(testing::transmon_pair({{1, Axis::Z, 0.03}}, 2, 3)), target_library(target));
}

GaConfig small_config() {
  GaConfig c;
  c.population_size = 20;
  c.selection_size = 16;
  c.mutation_probability = 0.01;
  c.max_iterations = 60;
  c.rng_seed = 42;
  return c;
}

PulseSchedule ones(int channels, int cycles) {
  PulseSchedule s(channels, cycles);
  for (int c = 0; c < channels; ++c) {
    for (int t = 0; t < cycles; ++t) s.set(c, t, true);
  }
  return s;
}

}  // namespace

TEST_CASE("rng is deterministic and restorable") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  const std::string saved = a.state();
  std::vector<std::uint64_t> first;
  for (int i = 0; i < 10; ++i) first.push_back(a.below(1000));
  Rng c(999);
  c.restore(saved);
  for (int i = 0; i < 10; ++i) CHECK(c.below(1000) == first[i]);
  CHECK_THROWS(c.restore("not a state"));
}

TEST_CASE("rng ranges") {
  Rng r(1);
  double lo = 1.0, hi = 0.0;
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = r.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    ++counts[r.below(7)];
  }
  CHECK(lo >= 0.0);
  CHECK(hi < 1.0);
  // Each bucket expects 10000 with sigma ~93.
  for (int n : counts) CHECK(std::abs(n - 10000) < 500);
  CHECK(r.below(1) == 0u);
}

TEST_CASE("single-point crossover") {
  const PulseSchedule a = ones(2, 8);
  const PulseSchedule b(2, 8);
  auto [c0, d0] = crossover(a, b, 0);
  CHECK(c0 == b);
  CHECK(d0 == a);
  auto [cn, dn] = crossover(a, b, 8);
  CHECK(cn == a);
  CHECK(dn == b);
  auto [c, d] = crossover(a, b, 3);
  for (int ch = 0; ch < 2; ++ch) {
    for (int t = 0; t < 8; ++t) {
      CHECK(c.bit(ch, t) == (t < 3));
      CHECK(d.bit(ch, t) == (t >= 3));
    }
  }
  CHECK_THROWS(crossover(a, b, 9));
  CHECK_THROWS(crossover(a, PulseSchedule(1, 8), 2));
}

TEST_CASE("mutation rate") {
  Rng r(3);
  PulseSchedule s(2, 5000);
  CHECK(mutate(s, 0.0, r) == 0);
  CHECK(s.pulse_count() == 0);
  const int flips = mutate(s, 0.01, r);
  CHECK(flips == s.pulse_count());
  // Binomial(10000, 0.01): mean 100, sigma ~10.
  CHECK(std::abs(flips - 100) < 50);
  PulseSchedule all(1, 64);
  CHECK(mutate(all, 1.0, r) == 64);
  CHECK(all == ones(1, 64));
}

TEST_CASE("rank selection draws distinct parents favouring the best") {
  Rng r(8);
  std::vector<int> first(10, 0);
  for (int i = 0; i < 4000; ++i) {
    const auto p = select_parents(10, 6, r);
    CHECK(std::set<int>(p.begin(), p.end()).size() == 6);
    ++first[p.front()];
  }
  // The first draw has weights 10..1 out of 55.
  CHECK(first[0] == doctest::Approx(4000 * 10.0 / 55.0).epsilon(0.15));
  CHECK(first[9] == doctest::Approx(4000 * 1.0 / 55.0).epsilon(0.5));
  CHECK(first[0] > first[9]);
}

TEST_CASE("config validation") {
  GaConfig c = small_config();
  CHECK_NOTHROW(c.validate());
  c.selection_size = 30;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.mutation_probability = 1.5;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.elitism_count = 25;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = small_config();
  c.init_density = -0.1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("GA stops as soon as the target is met") {
  // An empty single-qubit pulse train is exactly the identity.
  auto q = testing::transmon_ghz(5.0, -0.3, 3);
  const FitnessKernel kernel(precompute(assemble({q}, 0.0, {{0, Axis::X, 0.03}}, 2, 3, 8e-12)),
                             target_library("I"));
  GaConfig c = small_config();
  c.init_density = 0.0;
  const SearchResult r = run_ga(kernel, 50, c);
  CHECK(r.terminated_by == Termination::TargetReached);
  CHECK(r.iterations_used == 0);
  CHECK(r.best.fitness == doctest::Approx(1.0));
}

TEST_CASE("GA improves monotonically and is deterministic") {
  const FitnessKernel kernel = small_kernel();
  const GaConfig c = small_config();
  const SearchResult a = run_ga(kernel, 120, c);
  const SearchResult b = run_ga(kernel, 120, c);
  CHECK(a.best.schedule == b.best.schedule);
  CHECK(a.best.fitness == b.best.fitness);
  CHECK(a.history == b.history);
  CHECK(a.iterations_used == c.max_iterations);
  for (std::size_t i = 1; i < a.history.size(); ++i) CHECK(a.history[i].second > a.history[i - 1].second);
  CHECK(a.history.back().second == a.best.fitness);

  GaConfig other = c;
  other.rng_seed = 43;
  CHECK_FALSE(run_ga(kernel, 120, other).best.schedule == a.best.schedule);
}

TEST_CASE("checkpoint and resume reproduce an uninterrupted run") {
  const FitnessKernel kernel = small_kernel();
  const GaConfig c = small_config();
  const SearchResult straight = run_ga(kernel, 120, c);

  std::string saved;
  RunOptions first;
  first.stop_after = 25;
  first.checkpoint_every = 1000;
  first.on_checkpoint = [&](const GaState& s) { saved = serialize_state(s, c); };
  const SearchResult partial = run_ga(kernel, 120, c, first);
  CHECK(partial.iterations_used == 25);
  REQUIRE_FALSE(saved.empty());

  const GaState state = deserialize_state(saved);
  CHECK(state.iteration == 25);
  CHECK(serialize_state(state, c) == saved);
  RunOptions second;
  second.resume = state;
  const SearchResult resumed = run_ga(kernel, 120, c, second);
  CHECK(resumed.best.schedule == straight.best.schedule);
  CHECK(resumed.best.fitness == straight.best.fitness);
  CHECK(resumed.history == straight.history);
  CHECK(resumed.iterations_used == straight.iterations_used);

  CHECK_THROWS(deserialize_state("{}"));
  RunOptions bad;
  bad.resume = state;
  CHECK_THROWS(run_ga(kernel, 64, c, bad));
}
