/* Copyright 2026 The QEM Bounds Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "qem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qem/errors.hpp"
#include "qem/tolerances.hpp"

namespace qem {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix kron_all(std::span<const Matrix> factors) {
  if (factors.empty()) return Matrix::Identity(1, 1);
  Matrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

Matrix kron_power(const Matrix& a, std::size_t times) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < times; ++i) out = kron(out, a);
  return out;
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_error(const Matrix& m) { return max_abs(m - m.adjoint()); }

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())) <= tol;
}

bool is_power_of_two(std::size_t d) { return d != 0 && (d & (d - 1)) == 0; }

std::size_t qubit_count(std::size_t d) {
  if (!is_power_of_two(d)) {
    fail(ErrorCode::kDimensionNotPowerOfTwo,
         "dimension " + std::to_string(d) + " is not a power of two");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < d) ++n;
  return n;
}

HermitianEigen hermitian_eigen(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kInternal, "Hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m),
                                               Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::kInternal, "Hermitian eigendecomposition did not converge");
  }
  return solver.eigenvalues();
}

Matrix psd_sqrt(const Matrix& m) {
  const HermitianEigen eig = hermitian_eigen(m);
  RealVector roots = eig.values.unaryExpr(
      [](double v) { return v > kEigenNoiseTol ? std::sqrt(v) : 0.0; });
  return eig.vectors * roots.cast<Complex>().asDiagonal() *
         eig.vectors.adjoint();
}

Complex trace_product(const Matrix& a, const Matrix& b) {
  // Tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum();
}

Matrix qubit_permutation(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  const std::size_t dim = std::size_t{1} << n;
  Matrix u = Matrix::Zero(dim, dim);
  for (std::size_t in = 0; in < dim; ++in) {
    std::size_t out = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t bit = (in >> (n - 1 - k)) & 1u;
      out |= bit << (n - 1 - perm[k]);
    }
    u(out, in) = 1.0;
  }
  return u;
}

Matrix permute_qubits(const Matrix& op, std::span<const std::size_t> perm) {
  const Matrix u = qubit_permutation(perm);
  return u * op * u.adjoint();
}

Matrix register_cyclic_shift(std::size_t copies, std::size_t dim) {
  if (copies < 1 || dim < 1) fail(ErrorCode::kInvalidDimension, "empty register set");
  std::size_t total = 1;
  for (std::size_t r = 0; r < copies; ++r) total *= dim;
  Matrix u = Matrix::Zero(total, total);
  const std::size_t top = total / dim;
  for (std::size_t in = 0; in < total; ++in) {
    // Drop the leading digit x_0 and append it at the end.
    const std::size_t lead = in / top;
    const std::size_t out = (in % top) * dim + lead;
    u(out, in) = 1.0;
  }
  return u;
}

}  // namespace qem
