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

#include <string_view>
#include <vector>

#include "sfq/system.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Gate-quality functionals on the computational (lowest two levels per
/// qubit) subspace of a possibly non-unitary evolution.
///
/// With M the computational block of U and d = 2^q:
///   F1 = (tr(M^dag M) + |tr(T^dag M)|^2) / (d^2 + d)
///   F2 = sup over trailing per-qubit Z(alpha) of F1(Z U, T)
///   L  = 1 - tr(M^dag M) / d
/// Z(alpha) = diag(1, e^{i alpha}) on each qubit.

enum class Metric { F1, F2 };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

struct MetricInput {
  const Matrix& u;
  const GateTarget& target;
  int num_qubits = 1;
  int n_levels = 2;  ///< per-qubit levels of u
};

struct FidelityBreakdown {
  double f1 = 0.0;
  double f2 = 0.0;
  double leakage = 0.0;
  std::vector<double> best_z_angles;

  double value(Metric metric) const { return metric == Metric::F1 ? f1 : f2; }
};

struct RzFidelity {
  double value = 0.0;
  std::vector<double> angles;
};

/// Extracts the 2^q x 2^q computational block of a matrix on n_levels^q.
Matrix computational_block(const Matrix& u, int num_qubits, int n_levels);

double avg_fidelity_f1(const MetricInput& input);
RzFidelity rz_fidelity_f2(const MetricInput& input);
double avg_leakage(const Matrix& u_full, int num_qubits, int n_sim_levels);

// Block-level forms used by the fitness kernels.
double f1_from_block(const Matrix& block, const Matrix& target);
RzFidelity f2_from_block(const Matrix& block, const Matrix& target);
double leakage_from_block(const Matrix& block);
FidelityBreakdown breakdown_from_block(const Matrix& block, const Matrix& target);

/// Full breakdown of `u` (learning dimension) against the target.
FidelityBreakdown evaluate_metrics(const MetricInput& input);

/// Product of per-qubit Z(alpha) on the 2^q computational space.
Matrix trailing_z(const std::vector<double>& angles);

}  // namespace sfq
