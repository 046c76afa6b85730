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

#include "sfq/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "sfq/linalg.hpp"

namespace sfq {

namespace {

constexpr int kGridPoints = 32;

double wrap_angle(double a) {
  a = std::remainder(a, kTwoPi);
  return a <= -kPi ? a + kTwoPi : a;
}

// For two qubits, the overlap tr(T^dag Z M) = sum_i z_i w_i with
// w = diag(M T^dag). Given alpha0, the best alpha1 is analytic and the
// objective reduces to |w00 + e^{ia} w10| + |w01 + e^{ia} w11|.
struct TwoQubitOverlap {
  Complex w00, w01, w10, w11;

  double value(double a) const {
    const Complex e = std::exp(kI * a);
    return std::abs(w00 + e * w10) + std::abs(w01 + e * w11);
  }
  double best_second(double a) const {
    const Complex e = std::exp(kI * a);
    return std::arg(w00 + e * w10) - std::arg(w01 + e * w11);
  }
};

// Golden-section maximization on [lo, hi].
double golden_max(const TwoQubitOverlap& f, double lo, double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f.value(c), fd = f.value(d);
  for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f.value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f.value(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string_view to_string(Metric metric) { return metric == Metric::F1 ? "f1" : "f2"; }

Metric parse_metric(std::string_view text) {
  if (text == "f1" || text == "F1") return Metric::F1;
  if (text == "f2" || text == "F2") return Metric::F2;
  throw ConfigError("unknown metric '" + std::string(text) + "' (expected f1 or f2)");
}

Matrix computational_block(const Matrix& u, int num_qubits, int n_levels) {
  const int dim = ipow(n_levels, num_qubits);
  if (u.rows() != dim || u.cols() != dim) throw Error("metrics: matrix dimension mismatch");
  const int d = ipow(2, num_qubits);
  std::vector<int> idx;
  for (int i = 0; i < d; ++i) {
    int full = 0;
    for (int q = 0; q < num_qubits; ++q) {
      const int bit = (i >> (num_qubits - 1 - q)) & 1;
      full = full * n_levels + bit;
    }
    idx.push_back(full);
  }
  Matrix block(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) block(i, j) = u(idx[i], idx[j]);
  }
  return block;
}

double f1_from_block(const Matrix& block, const Matrix& target) {
  const double d = static_cast<double>(block.rows());
  const double norm = block.squaredNorm();
  const double overlap = std::norm((target.adjoint() * block).trace());
  return (norm + overlap) / (d * d + d);
}

RzFidelity f2_from_block(const Matrix& block, const Matrix& target) {
  const Eigen::Index d = block.rows();
  const double dd = static_cast<double>(d);
  const Matrix w = block * target.adjoint();
  const double norm = block.squaredNorm();
  RzFidelity out;
  double best_overlap = 0.0;
  if (d == 2) {
    best_overlap = std::abs(w(0, 0)) + std::abs(w(1, 1));
    const double a = (std::abs(w(1, 1)) > 0.0 && std::abs(w(0, 0)) > 0.0)
                         ? std::arg(w(0, 0)) - std::arg(w(1, 1))
                         : 0.0;
    out.angles = {wrap_angle(a)};
  } else if (d == 4) {
    const TwoQubitOverlap f{w(0, 0), w(1, 1), w(2, 2), w(3, 3)};
    const double step = kTwoPi / kGridPoints;
    int best_k = 0;
    double best_val = -1.0;
    for (int k = 0; k < kGridPoints; ++k) {
      const double v = f.value(k * step);
      if (v > best_val) {
        best_val = v;
        best_k = k;
      }
    }
    const double a0 = golden_max(f, (best_k - 1) * step, (best_k + 1) * step);
    double a = a0;
    double v = f.value(a0);
    if (best_val > v) {
      // Refinement did not improve on the grid; keep the grid point.
      a = best_k * step;
      v = best_val;
    }
    best_overlap = v;
    out.angles = {wrap_angle(a), wrap_angle(f.best_second(a))};
  } else {
    throw Error("rz fidelity: only one or two qubits are supported");
  }
  out.value = (norm + best_overlap * best_overlap) / (dd * dd + dd);
  return out;
}

double leakage_from_block(const Matrix& block) {
  return std::max(0.0, 1.0 - block.squaredNorm() / static_cast<double>(block.rows()));
}

FidelityBreakdown breakdown_from_block(const Matrix& block, const Matrix& target) {
  if (block.rows() != target.rows()) throw Error("metrics: target dimension mismatch");
  FidelityBreakdown out;
  out.f1 = f1_from_block(block, target);
  RzFidelity rz = f2_from_block(block, target);
  // The supremum includes alpha = 0, so F2 >= F1 holds exactly.
  out.f2 = std::max(rz.value, out.f1);
  out.best_z_angles = std::move(rz.angles);
  out.leakage = leakage_from_block(block);
  return out;
}

double avg_fidelity_f1(const MetricInput& in) {
  return f1_from_block(computational_block(in.u, in.num_qubits, in.n_levels), in.target.unitary);
}

RzFidelity rz_fidelity_f2(const MetricInput& in) {
  const Matrix block = computational_block(in.u, in.num_qubits, in.n_levels);
  RzFidelity rz = f2_from_block(block, in.target.unitary);
  rz.value = std::max(rz.value, f1_from_block(block, in.target.unitary));
  return rz;
}

double avg_leakage(const Matrix& u_full, int num_qubits, int n_sim_levels) {
  return leakage_from_block(computational_block(u_full, num_qubits, n_sim_levels));
}

FidelityBreakdown evaluate_metrics(const MetricInput& in) {
  if (in.target.num_qubits() != in.num_qubits) throw Error("metrics: target qubit count mismatch");
  return breakdown_from_block(computational_block(in.u, in.num_qubits, in.n_levels),
                              in.target.unitary);
}

Matrix trailing_z(const std::vector<double>& angles) {
  Matrix out = Matrix::Identity(1, 1);
  for (double a : angles) {
    Matrix z = Matrix::Identity(2, 2);
    z(1, 1) = std::exp(kI * a);
    out = kron(out, z);
  }
  return out;
}

}  // namespace sfq
