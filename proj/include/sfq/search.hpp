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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sfq/kernels.hpp"
#include "sfq/metrics.hpp"
#include "sfq/propagator.hpp"

namespace sfq {

/// Genetic-algorithm parameters. Defaults are the published settings; the
/// CLI lowers max_iterations for desk-scale runs.
struct GaConfig {
  int population_size = 70;
  int selection_size = 60;
  double mutation_probability = 0.001;  ///< per bit
  long max_iterations = 200000;
  double target_fidelity = 0.999;
  Metric metric = Metric::F2;
  std::uint64_t rng_seed = 1;
  int elitism_count = 2;
  double init_density = 0.5;  ///< probability of a pulse in the random initial population

  void validate() const;
};

/// Deterministic random source. Only the raw mt19937_64 stream (which the
/// standard fixes bit-for-bit) is consumed; the conversions below are ours,
/// so sequences are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                         ///< [0, 1)
  std::uint64_t below(std::uint64_t n);     ///< [0, n)
  bool bernoulli(double p) { return uniform() < p; }

  std::string state() const;
  void restore(const std::string& state);

 private:
  std::mt19937_64 engine_;
};

struct Individual {
  PulseSchedule schedule;
  double fitness = 0.0;
  FidelityBreakdown breakdown;
};

enum class Termination { TargetReached, MaxIterations };
std::string_view to_string(Termination t);

struct SearchResult {
  Individual best;
  std::vector<std::pair<long, double>> history;  ///< (iteration, best fitness) at improvements
  long iterations_used = 0;
  long evaluations = 0;
  double wall_time = 0.0;
  double evaluations_per_second = 0.0;
  Termination terminated_by = Termination::MaxIterations;
};

/// Complete GA state; enough to resume a run bit-identically.
struct GaState {
  long iteration = 0;
  std::string rng_state;
  std::vector<Individual> population;  ///< sorted best first
  std::vector<std::pair<long, double>> history;
  long evaluations = 0;
};

/// Single-point crossover at `cut` in [0, num_cycles], same cut on every channel.
std::pair<PulseSchedule, PulseSchedule> crossover(const PulseSchedule& a, const PulseSchedule& b,
                                                  int cut);
std::pair<PulseSchedule, PulseSchedule> crossover(const PulseSchedule& a, const PulseSchedule& b,
                                                  Rng& rng);

/// Flips each bit independently with probability p. Returns number of flips.
int mutate(PulseSchedule& schedule, double p, Rng& rng);

/// Rank-weighted selection of `count` distinct population indices
/// (population sorted best first; weight of rank r is size - r).
std::vector<int> select_parents(int population_size, int count, Rng& rng);

struct RunOptions {
  std::optional<GaState> resume;
  /// Called every checkpoint_every iterations (0 disables) with the state
  /// at the end of that iteration.
  long checkpoint_every = 0;
  std::function<void(const GaState&)> on_checkpoint;
  /// Stop after this iteration count regardless of convergence (used to
  /// split a run for checkpoint tests). -1 disables.
  long stop_after = -1;
};

SearchResult run_ga(const FitnessKernel& kernel, int num_cycles, const GaConfig& config,
                    const RunOptions& options = {});

std::string serialize_state(const GaState& state, const GaConfig& config);
GaState deserialize_state(const std::string& text);

}  // namespace sfq
