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

#include <span>
#include <vector>

#include "sfq/metrics.hpp"
#include "sfq/propagator.hpp"

namespace sfq {

/// Serial reference fitness: evolve_projected followed by the metrics.
FidelityBreakdown evaluate_fitness(const CycleUnitarySet& cycles, const PulseSchedule& schedule,
                                   const GateTarget& target);

/// Fast projected-evolution fitness evaluator.
///
/// Only the computational columns of the projected propagator enter the
/// metrics, so the kernel propagates a learn_dim x 2^q slab instead of the
/// full matrix. Consecutive cycles are grouped into chunks whose projected
/// products are tabulated for every bit pattern, cutting the per-evaluation
/// work by the chunk length. Results agree with evaluate_fitness to
/// rounding.
class FitnessKernel {
 public:
  FitnessKernel(const CycleUnitarySet& cycles, GateTarget target);

  const CycleUnitarySet& cycles() const { return cycles_; }
  const GateTarget& target() const { return target_; }
  int chunk_length() const { return chunk_length_; }

  /// Computational block of the projected, rest-frame evolution.
  Matrix computational_evolution(const PulseSchedule& schedule) const;

  FidelityBreakdown evaluate(const PulseSchedule& schedule) const;

  /// Evaluates every schedule, in parallel across schedules (OpenMP).
  std::vector<FidelityBreakdown> evaluate_batch(std::span<const PulseSchedule> schedules) const;

  /// Same as evaluate_batch on a single thread.
  std::vector<FidelityBreakdown> evaluate_batch_serial(std::span<const PulseSchedule> schedules) const;

 private:
  CycleUnitarySet cycles_;
  GateTarget target_;
  int chunk_length_ = 1;
  int bits_per_cycle_ = 0;
  std::vector<Matrix> chunk_table_;  // index: cycle masks packed low-to-high in time
  Matrix start_;                     // computational columns of the learning identity
};

}  // namespace sfq
