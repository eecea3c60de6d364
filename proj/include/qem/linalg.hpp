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

#ifndef QEM_LINALG_HPP_
#define QEM_LINALG_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qem {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Kronecker product a (x) b; a acts on the more significant factor.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron_all(std::span<const Matrix> factors);
Matrix kron_power(const Matrix& a, std::size_t times);

double max_abs(const Matrix& m);
double hermiticity_error(const Matrix& m);
Matrix hermitize(const Matrix& m);
bool is_unitary(const Matrix& u, double tol);

bool is_power_of_two(std::size_t d);
// log2 of a power-of-two dimension; throws DimensionNotPowerOfTwo otherwise.
std::size_t qubit_count(std::size_t d);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

// Eigendecomposition of the Hermitian part of m.
HermitianEigen hermitian_eigen(const Matrix& m);
RealVector hermitian_eigenvalues(const Matrix& m);

// Square root of a PSD matrix; eigenvalues below zero are clipped.
Matrix psd_sqrt(const Matrix& m);

// Real trace of a product, Tr(a b), without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b);

// Permutation unitary that maps qubit k of the input to position perm[k]
// of the output (qubit 0 is the most significant bit).
Matrix qubit_permutation(std::span<const std::size_t> perm);

// Reorders the tensor factors of an operator on n qubits; conjugation by
// qubit_permutation(perm).
Matrix permute_qubits(const Matrix& op, std::span<const std::size_t> perm);

// Cyclic shift of `copies` registers of dimension `dim`:
// |x_0 x_1 ... x_{Q-1}> -> |x_1 ... x_{Q-1} x_0>. For two copies this is SWAP.
Matrix register_cyclic_shift(std::size_t copies, std::size_t dim);

}  // namespace qem

#endif  // QEM_LINALG_HPP_
