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

#include <cmath>

#include "sfq/linalg.hpp"
#include "sfq/metrics.hpp"
#include "test_util.hpp"

using namespace sfq;

namespace {

Matrix diag2(Complex a, Complex b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// Brute-force supremum of |tr(T^dag Z(a0, a1) M)| over a fine grid.
double brute_two_qubit_overlap(const Matrix& m, const Matrix& t, int grid) {
  double best = 0.0;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const Matrix z = trailing_z({kTwoPi * i / grid, kTwoPi * j / grid});
      best = std::max(best, std::abs((t.adjoint() * z * m).trace()));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("F1 hand-computed values") {
  const Matrix x = target_library("X").unitary;
  const Matrix id = Matrix::Identity(2, 2);
  // Half-leaked identity: (|M|^2 + |tr|^2) / (d^2 + d) = (1 + 1) / 6.
  CHECK(f1_from_block(diag2(1, 0), id) == doctest::Approx(1.0 / 3.0));
  CHECK(f1_from_block(diag2(1, 0), x) == doctest::Approx(1.0 / 6.0));
  CHECK(leakage_from_block(diag2(1, 0)) == doctest::Approx(0.5));
  // CZ against identity: (4 + 4) / 20.
  CHECK(f1_from_block(target_library("CZ").unitary, Matrix::Identity(4, 4)) == doctest::Approx(0.4));
  CHECK(f1_from_block(x, x) == doctest::Approx(1.0));
}

TEST_CASE("F2 removes trailing Z rotations") {
  const Matrix cz = target_library("CZ").unitary;
  const Matrix m = trailing_z({-0.3, 0.7}) * cz;
  const RzFidelity rz = f2_from_block(m, cz);
  CHECK(rz.value == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(rz.angles.size() == 2);
  CHECK(rz.angles[0] == doctest::Approx(0.3).epsilon(1e-6));
  CHECK(rz.angles[1] == doctest::Approx(-0.7).epsilon(1e-6));
  CHECK(f1_from_block(m, cz) < 0.99);

  const Matrix ry = target_library("RY90").unitary;
  const RzFidelity one = f2_from_block(diag2(1, std::exp(kI * 1.1)) * ry, ry);
  CHECK(one.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.angles[0] == doctest::Approx(-1.1).epsilon(1e-12));
}

TEST_CASE("F2 agrees with a brute-force search over Z angles") {
  std::mt19937_64 gen(13);
  const Matrix target = target_library("CNOT").unitary;
  for (int i = 0; i < 5; ++i) {
    const Matrix m = 0.9 * testing::haar_unitary(4, gen);
    const double norm = m.squaredNorm();
    const double brute = brute_two_qubit_overlap(m, target, 200);
    const RzFidelity rz = f2_from_block(m, target);
    const double overlap = std::sqrt(rz.value * 20.0 - norm);
    CHECK(overlap >= brute - 1e-9);
    // The grid resolution bounds how far brute force can fall short.
    CHECK(overlap <= brute + 1e-3);
  }
}

TEST_CASE("metric chain and phase invariance on random contractions") {
  std::mt19937_64 gen(17);
  const Matrix target = target_library("CZ").unitary;
  for (int i = 0; i < 200; ++i) {
    // Computational block of a random 9x9 unitary: a generic contraction.
    const Matrix u = testing::haar_unitary(9, gen);
    const Matrix full_block = computational_block(u, 2, 3);
    const FidelityBreakdown b = breakdown_from_block(full_block, target);
    CHECK(b.f1 <= b.f2 + 1e-12);
    CHECK(b.f2 <= 1.0 - b.leakage + 1e-8);
    const Complex phase = std::exp(kI * 0.77);
    const FidelityBreakdown p = breakdown_from_block(phase * full_block, target);
    CHECK(p.f1 == doctest::Approx(b.f1).epsilon(1e-12));
    CHECK(p.f2 == doctest::Approx(b.f2).epsilon(1e-10));
  }
}

TEST_CASE("leakage equals the average over random computational states") {
  std::mt19937_64 gen(19);
  const int levels = 3;
  const Matrix u = testing::haar_unitary(levels * levels, gen);
  const double analytic = avg_leakage(u, 2, levels);
  const std::vector<int> comp{0, 1, 3, 4};
  const int samples = 10000;
  double sum = 0.0, sum_sq = 0.0;
  for (int s = 0; s < samples; ++s) {
    const Vector psi4 = testing::haar_state(4, gen);
    Vector psi = Vector::Zero(levels * levels);
    for (int i = 0; i < 4; ++i) psi(comp[i]) = psi4(i);
    const Vector out = u * psi;
    double inside = 0.0;
    for (int i : comp) inside += std::norm(out(i));
    sum += 1.0 - inside;
    sum_sq += (1.0 - inside) * (1.0 - inside);
  }
  const double mean = sum / samples;
  const double sigma = std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - analytic) < 3.0 * sigma);
}

TEST_CASE("metric input dispatch") {
  const Matrix cz = target_library("CZ").unitary;
  Matrix u = Matrix::Identity(9, 9);
  for (int i : {0, 1, 3, 4}) {
    for (int j : {0, 1, 3, 4}) u(i, j) = 0.0;
  }
  const std::vector<int> comp{0, 1, 3, 4};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) u(comp[i], comp[j]) = cz(i, j);
  }
  const GateTarget target = target_library("CZ");
  const MetricInput in{u, target, 2, 3};
  CHECK(avg_fidelity_f1(in) == doctest::Approx(1.0));
  CHECK(rz_fidelity_f2(in).value == doctest::Approx(1.0));
  CHECK(evaluate_metrics(in).leakage == doctest::Approx(0.0));
  const GateTarget wrong = target_library("X");
  CHECK_THROWS(evaluate_metrics(MetricInput{u, wrong, 2, 3}));
  CHECK_THROWS(computational_block(u, 2, 4));
  CHECK(parse_metric("f2") == Metric::F2);
  CHECK_THROWS_AS(parse_metric("f3"), ConfigError);
}
