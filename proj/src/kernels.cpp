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

#include "sfq/kernels.hpp"

namespace sfq {

namespace {

// Upper bound on tabulated chunk products.
constexpr int kMaxTableBits = 8;

}  // namespace

FidelityBreakdown evaluate_fitness(const CycleUnitarySet& cycles, const PulseSchedule& schedule,
                                   const GateTarget& target) {
  const EvolutionResult evo = evolve_projected(cycles, schedule);
  const CoupledSystem& sys = cycles.system;
  return evaluate_metrics({evo.matrix, target, sys.num_qubits(), sys.n_levels});
}

FitnessKernel::FitnessKernel(const CycleUnitarySet& cycles, GateTarget target)
    : cycles_(cycles), target_(std::move(target)) {
  const CoupledSystem& sys = cycles_.system;
  if (target_.num_qubits() != sys.num_qubits()) {
    throw Error("fitness kernel: target acts on a different number of qubits");
  }
  bits_per_cycle_ = static_cast<int>(sys.channels.size());
  chunk_length_ = bits_per_cycle_ == 0 ? 1 : std::max(1, kMaxTableBits / bits_per_cycle_);

  // table[len][idx]: product over len cycles, first cycle in the low bits.
  const std::size_t masks = sys.num_masks();
  std::vector<Matrix> level = cycles_.learn_blocks;
  for (int len = 2; len <= chunk_length_; ++len) {
    std::vector<Matrix> next;
    next.reserve(level.size() * masks);
    // Pushing in (last, prefix) order gives idx = last << ((len-1)*bits) | prefix.
    for (std::size_t last = 0; last < masks; ++last) {
      for (std::size_t prefix = 0; prefix < level.size(); ++prefix) {
        next.push_back(cycles_.learn_blocks[last] * level[prefix]);
      }
    }
    level = std::move(next);
  }
  chunk_table_ = std::move(level);

  const int ld = sys.learn_dim();
  start_ = Matrix::Zero(ld, sys.comp_dim());
  for (int c = 0; c < sys.comp_dim(); ++c) start_(sys.comp_in_learn[c], c) = 1.0;
}

Matrix FitnessKernel::computational_evolution(const PulseSchedule& schedule) const {
  const CoupledSystem& sys = cycles_.system;
  check_schedule(sys, schedule);
  const int n = schedule.num_cycles();
  Matrix x = start_;
  Matrix tmp(x.rows(), x.cols());
  int t = 0;
  for (; t + chunk_length_ <= n; t += chunk_length_) {
    std::size_t idx = 0;
    for (int k = 0; k < chunk_length_; ++k) {
      idx |= static_cast<std::size_t>(schedule.mask_at(t + k)) << (k * bits_per_cycle_);
    }
    tmp.noalias() = chunk_table_[idx] * x;
    x.swap(tmp);
  }
  for (; t < n; ++t) {
    tmp.noalias() = cycles_.learn_blocks[schedule.mask_at(t)] * x;
    x.swap(tmp);
  }
  const int d = sys.comp_dim();
  std::vector<int> comp_sim(d);
  Matrix block(d, d);
  for (int i = 0; i < d; ++i) {
    block.row(i) = x.row(sys.comp_in_learn[i]);
    comp_sim[i] = sys.learn_indices[sys.comp_in_learn[i]];
  }
  to_rest_frame(sys, n, comp_sim, block);
  return block;
}

FidelityBreakdown FitnessKernel::evaluate(const PulseSchedule& schedule) const {
  return breakdown_from_block(computational_evolution(schedule), target_.unitary);
}

std::vector<FidelityBreakdown> FitnessKernel::evaluate_batch(
    std::span<const PulseSchedule> schedules) const {
  std::vector<FidelityBreakdown> out(schedules.size());
  const auto count = static_cast<std::ptrdiff_t>(schedules.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    out[i] = evaluate(schedules[i]);
  }
  return out;
}

std::vector<FidelityBreakdown> FitnessKernel::evaluate_batch_serial(
    std::span<const PulseSchedule> schedules) const {
  std::vector<FidelityBreakdown> out;
  out.reserve(schedules.size());
  for (const auto& s : schedules) out.push_back(evaluate(s));
  return out;
}

}  // namespace sfq
