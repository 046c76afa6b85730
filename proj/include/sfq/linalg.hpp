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

#include "sfq/types.hpp"

namespace sfq {

/// exp(-i * h * t) for Hermitian h, via eigendecomposition.
Matrix expm_hermitian(const Matrix& h, double t = 1.0);

Matrix kron(const Matrix& a, const Matrix& b);

/// max |(U^dagger U - I)_ij|
double unitarity_error(const Matrix& u);

/// max |(H - H^dagger)_ij|
double hermiticity_error(const Matrix& h);

/// Places a single-qubit operator on `qubit` of a register of `num_qubits`
/// qudits with `levels` levels each. Qubit 0 is the most significant factor.
Matrix embed(const Matrix& op, int qubit, int num_qubits, int levels);

/// Integer power without std::pow rounding.
constexpr int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace sfq
