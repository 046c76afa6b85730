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

#include "sfq/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace sfq {

Matrix expm_hermitian(const Matrix& h, double t) {
  if (h.rows() != h.cols()) throw Error("expm_hermitian: matrix is not square");
  if (h.rows() == 0) return Matrix(0, 0);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("expm_hermitian: eigendecomposition did not converge");
  }
  const Matrix& v = eig.eigenvectors();
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) {
    phases(k) = std::exp(-kI * eig.eigenvalues()(k) * t);
  }
  return v * phases.asDiagonal() * v.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double unitarity_error(const Matrix& u) {
  const Matrix d = u.adjoint() * u - Matrix::Identity(u.cols(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

double hermiticity_error(const Matrix& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Matrix embed(const Matrix& op, int qubit, int num_qubits, int levels) {
  Matrix out = Matrix::Identity(1, 1);
  for (int q = 0; q < num_qubits; ++q) {
    out = kron(out, q == qubit ? op : Matrix::Identity(levels, levels));
  }
  return out;
}

}  // namespace sfq
