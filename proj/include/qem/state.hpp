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

#ifndef QEM_STATE_HPP_
#define QEM_STATE_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qem/linalg.hpp"

namespace qem {

// Hermitian, PSD, unit-trace operator. Instances are immutable and always
// satisfy the invariants within kStructuralTol.
class DensityMatrix {
 public:
  // Validates and, when the negative eigenvalue mass is within tolerance,
  // clips it and renormalizes. Throws NotHermitian, NotUnitTrace, NotPositive.
  static DensityMatrix from_matrix(const Matrix& entries);

  // For matrices that are valid by construction (channel outputs, tensor
  // products of valid states). Hermitizes and fixes the trace, but does not
  // diagonalize.
  static DensityMatrix trusted(Matrix entries);

  static DensityMatrix pure(const Vector& ket);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double purity() const;

  DensityMatrix tensor(const DensityMatrix& other) const;
  DensityMatrix tensor_power(std::size_t copies) const;

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

DensityMatrix make_density_matrix(const Matrix& entries);

// Haar-random pure state; deterministic in seed.
DensityMatrix haar_random_state(std::size_t dim, std::uint64_t seed);
Vector haar_random_ket(std::size_t dim, std::uint64_t seed);
// Haar-random unitary via QR of a Ginibre matrix with phase fix.
Matrix haar_random_unitary(std::size_t dim, std::uint64_t seed);

// Single-qubit product states: "zero", "one", "plus", "minus", "plusi",
// "minusi". n copies are tensored together.
Vector named_ket(std::string_view name, std::size_t qubits = 1);

class Observable {
 public:
  // Throws NotHermitian.
  static Observable from_matrix(const Matrix& entries);
  // Pauli string with a scalar, e.g. pauli("XZ", 0.5) for XZ/2.
  static Observable pauli(std::string_view label, double scale);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  // Spectrum within [-1/2, 1/2].
  bool is_normalized() const;

 private:
  explicit Observable(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

// Tr(A rho). Throws DimensionMismatch.
double expectation(const Observable& a, const DensityMatrix& rho);

}  // namespace qem

#endif  // QEM_STATE_HPP_
