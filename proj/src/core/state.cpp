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

#include "qem/state.hpp"

#include <cmath>
#include <random>
#include <string>

#include "qem/errors.hpp"
#include "qem/pauli.hpp"
#include "qem/random.hpp"
#include "qem/tolerances.hpp"

namespace qem {

DensityMatrix DensityMatrix::from_matrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    fail(ErrorCode::kInvalidDimension, "density matrix must be square and non-empty");
  }
  const double herm = hermiticity_error(entries);
  if (herm > kStructuralTol) {
    fail(ErrorCode::kNotHermitian,
         "matrix deviates from Hermitian by " + std::to_string(herm));
  }
  Matrix m = hermitize(entries);
  const Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStructuralTol) {
    fail(ErrorCode::kNotUnitTrace, "trace is " + std::to_string(tr.real()));
  }
  const HermitianEigen eig = hermitian_eigen(m);
  const double min_eig = eig.values.minCoeff();
  if (min_eig < -kStructuralTol) {
    fail(ErrorCode::kNotPositive,
         "minimum eigenvalue " + std::to_string(min_eig) + " below tolerance");
  }
  if (min_eig < 0.0) {
    RealVector clipped = eig.values.cwiseMax(0.0);
    clipped /= clipped.sum();
    m = eig.vectors * clipped.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    m = hermitize(m);
  } else {
    m /= tr.real();
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::trusted(Matrix entries) {
  Matrix m = hermitize(entries);
  const double tr = m.trace().real();
  if (tr > 0.0) m /= tr;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::pure(const Vector& ket) {
  const double norm = ket.norm();
  if (norm == 0.0) fail(ErrorCode::kInvalidArgument, "zero state vector");
  const Vector v = ket / norm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) fail(ErrorCode::kInvalidDimension, "dimension must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double DensityMatrix::purity() const { return trace_product(m_, m_).real(); }

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  return DensityMatrix(kron(m_, other.m_));
}

DensityMatrix DensityMatrix::tensor_power(std::size_t copies) const {
  return DensityMatrix(kron_power(m_, copies));
}

DensityMatrix make_density_matrix(const Matrix& entries) {
  return DensityMatrix::from_matrix(entries);
}

Vector haar_random_ket(std::size_t dim, std::uint64_t seed) {
  if (dim < 2) fail(ErrorCode::kInvalidDimension, "Haar states need dim >= 2");
  std::mt19937_64 gen(mix_seed(seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

DensityMatrix haar_random_state(std::size_t dim, std::uint64_t seed) {
  return DensityMatrix::pure(haar_random_ket(dim, seed));
}

Matrix haar_random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) fail(ErrorCode::kInvalidDimension, "dimension must be positive");
  std::mt19937_64 gen(mix_seed(seed ^ 0x5555555555555555ULL));
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      z(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

Vector named_ket(std::string_view name, std::size_t qubits) {
  const double h = 1.0 / std::sqrt(2.0);
  Vector one_qubit(2);
  if (name == "zero") {
    one_qubit << 1.0, 0.0;
  } else if (name == "one") {
    one_qubit << 0.0, 1.0;
  } else if (name == "plus") {
    one_qubit << h, h;
  } else if (name == "minus") {
    one_qubit << h, -h;
  } else if (name == "plusi") {
    one_qubit << h, Complex(0.0, h);
  } else if (name == "minusi") {
    one_qubit << h, Complex(0.0, -h);
  } else {
    fail(ErrorCode::kParseError, "unknown state name '" + std::string(name) + "'");
  }
  if (qubits == 0) fail(ErrorCode::kInvalidDimension, "need at least one qubit");
  Matrix out = one_qubit;
  for (std::size_t i = 1; i < qubits; ++i) out = kron(out, one_qubit);
  return out.col(0);
}

Observable Observable::from_matrix(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    fail(ErrorCode::kInvalidDimension, "observable must be square and non-empty");
  }
  const double herm = hermiticity_error(entries);
  if (herm > kStructuralTol) {
    fail(ErrorCode::kNotHermitian,
         "observable deviates from Hermitian by " + std::to_string(herm));
  }
  return Observable(hermitize(entries));
}

Observable Observable::pauli(std::string_view label, double scale) {
  return Observable(scale * pauli_string_matrix(label));
}

bool Observable::is_normalized() const {
  const RealVector ev = hermitian_eigenvalues(m_);
  return ev.minCoeff() >= -0.5 - kStructuralTol &&
         ev.maxCoeff() <= 0.5 + kStructuralTol;
}

double expectation(const Observable& a, const DensityMatrix& rho) {
  if (a.dim() != rho.dim()) {
    fail(ErrorCode::kDimensionMismatch, "observable and state dimensions differ");
  }
  return trace_product(a.matrix(), rho.matrix()).real();
}

}  // namespace qem
