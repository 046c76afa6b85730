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

#include "sfq/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace sfq {

namespace {

// Bounded memo of evaluated schedules; purely a speed-up.
constexpr std::size_t kCacheLimit = 20000;

std::string schedule_key(const PulseSchedule& s) {
  std::string key;
  key.reserve(static_cast<std::size_t>(s.num_channels()) * s.num_cycles());
  for (int c = 0; c < s.num_channels(); ++c) {
    for (auto b : s.channel(c)) key.push_back(static_cast<char>('0' + b));
  }
  return key;
}

void sort_population(std::vector<Individual>& pop) {
  std::stable_sort(pop.begin(), pop.end(),
                   [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
}

class FitnessCache {
 public:
  FitnessCache(const FitnessKernel& kernel, Metric metric) : kernel_(kernel), metric_(metric) {}

  void evaluate(std::vector<Individual>& batch, long& evaluations) {
    std::vector<std::string> keys;
    std::vector<std::size_t> todo;
    std::vector<PulseSchedule> pending;
    for (std::size_t i = 0; i < batch.size(); ++i) {
      keys.push_back(schedule_key(batch[i].schedule));
      auto it = memo_.find(keys.back());
      if (it != memo_.end()) {
        batch[i].breakdown = it->second;
      } else {
        todo.push_back(i);
        pending.push_back(batch[i].schedule);
      }
    }
    const auto results = kernel_.evaluate_batch(pending);
    evaluations += static_cast<long>(pending.size());
    if (memo_.size() + results.size() > kCacheLimit) memo_.clear();
    for (std::size_t k = 0; k < todo.size(); ++k) {
      batch[todo[k]].breakdown = results[k];
      memo_.emplace(keys[todo[k]], results[k]);
    }
    for (auto& ind : batch) ind.fitness = ind.breakdown.value(metric_);
  }

 private:
  const FitnessKernel& kernel_;
  Metric metric_;
  std::unordered_map<std::string, FidelityBreakdown> memo_;
};

PulseSchedule random_schedule(int channels, int cycles, double density, Rng& rng) {
  PulseSchedule s(channels, cycles);
  for (int c = 0; c < channels; ++c) {
    for (int t = 0; t < cycles; ++t) s.set(c, t, rng.bernoulli(density));
  }
  return s;
}

}  // namespace

void GaConfig::validate() const {
  if (population_size < 2) throw ConfigError("ga: population_size must be at least 2");
  if (selection_size < 2 || selection_size > population_size) {
    throw ConfigError("ga: selection_size must be in [2, population_size]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw ConfigError("ga: mutation_probability must be in [0, 1]");
  }
  if (max_iterations < 0) throw ConfigError("ga: max_iterations must be non-negative");
  if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
    throw ConfigError("ga: target_fidelity must be in (0, 1]");
  }
  if (elitism_count < 0 || elitism_count >= population_size) {
    throw ConfigError("ga: elitism_count must be in [0, population_size)");
  }
  if (!(init_density >= 0.0 && init_density <= 1.0)) {
    throw ConfigError("ga: init_density must be in [0, 1]");
  }
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error("Rng::below: empty range");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return r % n;
  }
}

std::string Rng::state() const {
  std::ostringstream os;
  os << engine_;
  return os.str();
}

void Rng::restore(const std::string& state) {
  std::istringstream is(state);
  is >> engine_;
  if (!is) throw Error("Rng::restore: malformed state");
}

std::string_view to_string(Termination t) {
  return t == Termination::TargetReached ? "target_reached" : "max_iterations";
}

std::pair<PulseSchedule, PulseSchedule> crossover(const PulseSchedule& a, const PulseSchedule& b,
                                                  int cut) {
  if (a.num_cycles() != b.num_cycles() || a.num_channels() != b.num_channels()) {
    throw Error("crossover: parents differ in shape");
  }
  if (cut < 0 || cut > a.num_cycles()) throw Error("crossover: cut out of range");
  const int n = a.num_cycles();
  return {a.slice(0, cut).then(b.slice(cut, n)), b.slice(0, cut).then(a.slice(cut, n))};
}

std::pair<PulseSchedule, PulseSchedule> crossover(const PulseSchedule& a, const PulseSchedule& b,
                                                  Rng& rng) {
  const int cut = static_cast<int>(rng.below(static_cast<std::uint64_t>(a.num_cycles()) + 1));
  return crossover(a, b, cut);
}

int mutate(PulseSchedule& schedule, double p, Rng& rng) {
  if (p <= 0.0) return 0;
  const long total = static_cast<long>(schedule.num_channels()) * schedule.num_cycles();
  const int cycles = schedule.num_cycles();
  int flips = 0;
  if (p >= 1.0) {
    for (long i = 0; i < total; ++i) schedule.flip(static_cast<int>(i / cycles), static_cast<int>(i % cycles));
    return static_cast<int>(total);
  }
  // Geometric gaps between flipped bits.
  const double log_q = std::log1p(-p);
  long pos = -1;
  for (;;) {
    const double u = 1.0 - rng.uniform();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(total)) break;
    pos += static_cast<long>(gap) + 1;
    if (pos >= total) break;
    schedule.flip(static_cast<int>(pos / cycles), static_cast<int>(pos % cycles));
    ++flips;
  }
  return flips;
}

std::vector<int> select_parents(int population_size, int count, Rng& rng) {
  if (count > population_size) throw Error("select_parents: count exceeds population");
  std::vector<int> pool(population_size);
  for (int i = 0; i < population_size; ++i) pool[i] = i;
  std::vector<int> chosen;
  chosen.reserve(count);
  for (int k = 0; k < count; ++k) {
    long total = 0;
    for (int idx : pool) total += population_size - idx;
    long r = static_cast<long>(rng.below(static_cast<std::uint64_t>(total)));
    std::size_t pick = 0;
    for (; pick < pool.size(); ++pick) {
      r -= population_size - pool[pick];
      if (r < 0) break;
    }
    chosen.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return chosen;
}

SearchResult run_ga(const FitnessKernel& kernel, int num_cycles, const GaConfig& config,
                    const RunOptions& options) {
  config.validate();
  if (num_cycles <= 0) throw Error("run_ga: num_cycles must be positive");
  const int channels = static_cast<int>(kernel.cycles().system.channels.size());
  if (channels == 0) throw Error("run_ga: system has no control channels");

  const auto t0 = std::chrono::steady_clock::now();
  FitnessCache cache(kernel, config.metric);
  Rng rng(config.rng_seed);
  GaState state;

  if (options.resume) {
    state = *options.resume;
    rng.restore(state.rng_state);
    if (static_cast<int>(state.population.size()) != config.population_size) {
      throw Error("run_ga: checkpoint population size does not match config");
    }
    for (const auto& ind : state.population) {
      if (ind.schedule.num_cycles() != num_cycles || ind.schedule.num_channels() != channels) {
        throw Error("run_ga: checkpoint schedules do not match the system");
      }
    }
  } else {
    for (int i = 0; i < config.population_size; ++i) {
      state.population.push_back({random_schedule(channels, num_cycles, config.init_density, rng), 0.0, {}});
    }
    cache.evaluate(state.population, state.evaluations);
    sort_population(state.population);
    state.history.emplace_back(0, state.population.front().fitness);
  }

  const int pairs = config.selection_size / 2;
  long ran = 0;
  while (state.iteration < config.max_iterations &&
         state.population.front().fitness < config.target_fidelity) {
    if (options.stop_after >= 0 && ran >= options.stop_after) break;
    ++state.iteration;
    ++ran;

    const std::vector<int> parents = select_parents(config.population_size, config.selection_size, rng);
    std::vector<Individual> children;
    children.reserve(config.selection_size);
    for (int p = 0; p < pairs; ++p) {
      auto [a, b] = crossover(state.population[parents[2 * p]].schedule,
                              state.population[parents[2 * p + 1]].schedule, rng);
      mutate(a, config.mutation_probability, rng);
      mutate(b, config.mutation_probability, rng);
      children.push_back({std::move(a), 0.0, {}});
      children.push_back({std::move(b), 0.0, {}});
    }
    if (config.selection_size % 2 == 1) {
      PulseSchedule c = state.population[parents.back()].schedule;
      mutate(c, config.mutation_probability, rng);
      children.push_back({std::move(c), 0.0, {}});
    }
    cache.evaluate(children, state.evaluations);
    std::stable_sort(children.begin(), children.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });

    std::unordered_set<std::string> present;
    for (const auto& ind : state.population) present.insert(schedule_key(ind.schedule));
    const double previous_best = state.population.front().fitness;
    const auto replaceable = static_cast<std::size_t>(config.population_size - config.elitism_count);
    for (auto& child : children) {
      if (replaceable == 0) break;
      Individual& worst = state.population.back();
      if (!(child.fitness > worst.fitness)) break;  // children are sorted
      std::string key = schedule_key(child.schedule);
      if (present.count(key)) continue;
      present.erase(schedule_key(worst.schedule));
      present.insert(std::move(key));
      worst = std::move(child);
      sort_population(state.population);
    }
    if (state.population.front().fitness > previous_best) {
      state.history.emplace_back(state.iteration, state.population.front().fitness);
    }
    if (options.checkpoint_every > 0 && options.on_checkpoint &&
        state.iteration % options.checkpoint_every == 0) {
      state.rng_state = rng.state();
      options.on_checkpoint(state);
    }
  }

  state.rng_state = rng.state();
  if (options.on_checkpoint && options.checkpoint_every > 0) options.on_checkpoint(state);

  SearchResult result;
  result.best = state.population.front();
  result.history = state.history;
  result.iterations_used = state.iteration;
  result.evaluations = state.evaluations;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  result.evaluations_per_second =
      result.wall_time > 0 ? static_cast<double>(state.evaluations) / result.wall_time : 0.0;
  result.terminated_by = result.best.fitness >= config.target_fidelity ? Termination::TargetReached
                                                                       : Termination::MaxIterations;
  return result;
}

namespace {

nlohmann::json individual_to_json(const Individual& ind) {
  nlohmann::json bits = nlohmann::json::array();
  for (int c = 0; c < ind.schedule.num_channels(); ++c) {
    std::string s;
    for (auto b : ind.schedule.channel(c)) s.push_back(static_cast<char>('0' + b));
    bits.push_back(s);
  }
  return {{"bits", bits},
          {"fitness", ind.fitness},
          {"f1", ind.breakdown.f1},
          {"f2", ind.breakdown.f2},
          {"leakage", ind.breakdown.leakage},
          {"z_angles", ind.breakdown.best_z_angles}};
}

Individual individual_from_json(const nlohmann::json& j) {
  const auto& bits = j.at("bits");
  const int channels = static_cast<int>(bits.size());
  const int cycles = channels ? static_cast<int>(bits[0].get<std::string>().size()) : 0;
  Individual ind{PulseSchedule(channels, cycles), j.at("fitness").get<double>(), {}};
  for (int c = 0; c < channels; ++c) {
    const std::string s = bits[c].get<std::string>();
    if (static_cast<int>(s.size()) != cycles) throw Error("checkpoint: ragged bitstreams");
    for (int t = 0; t < cycles; ++t) {
      if (s[t] != '0' && s[t] != '1') throw Error("checkpoint: invalid bit character");
      ind.schedule.set(c, t, s[t] == '1');
    }
  }
  ind.breakdown.f1 = j.at("f1").get<double>();
  ind.breakdown.f2 = j.at("f2").get<double>();
  ind.breakdown.leakage = j.at("leakage").get<double>();
  ind.breakdown.best_z_angles = j.at("z_angles").get<std::vector<double>>();
  return ind;
}

}  // namespace

std::string serialize_state(const GaState& state, const GaConfig& config) {
  nlohmann::json j;
  j["schema"] = "sfqgate.checkpoint/1";
  j["config"] = {{"population_size", config.population_size},
                 {"selection_size", config.selection_size},
                 {"mutation_probability", config.mutation_probability},
                 {"max_iterations", config.max_iterations},
                 {"target_fidelity", config.target_fidelity},
                 {"metric", std::string(to_string(config.metric))},
                 {"rng_seed", config.rng_seed},
                 {"elitism_count", config.elitism_count},
                 {"init_density", config.init_density}};
  j["iteration"] = state.iteration;
  j["evaluations"] = state.evaluations;
  j["rng_state"] = state.rng_state;
  j["history"] = state.history;
  j["population"] = nlohmann::json::array();
  for (const auto& ind : state.population) j["population"].push_back(individual_to_json(ind));
  return j.dump(1);
}

GaState deserialize_state(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema").get<std::string>() != "sfqgate.checkpoint/1") {
    throw Error("checkpoint: unsupported schema");
  }
  GaState state;
  state.iteration = j.at("iteration").get<long>();
  state.evaluations = j.at("evaluations").get<long>();
  state.rng_state = j.at("rng_state").get<std::string>();
  state.history = j.at("history").get<std::vector<std::pair<long, double>>>();
  for (const auto& ind : j.at("population")) state.population.push_back(individual_from_json(ind));
  return state;
}

}  // namespace sfq
