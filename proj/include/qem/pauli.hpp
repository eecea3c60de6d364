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

#ifndef QEM_PAULI_HPP_
#define QEM_PAULI_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qem/linalg.hpp"

namespace qem {

class Observable;

// 2x2 matrix for one of 'I', 'X', 'Y', 'Z'.
Matrix pauli_matrix(char p);
// Tensor product over a label like "XIZ" (first character = qubit 0, the
// most significant tensor factor).
Matrix pauli_string_matrix(std::string_view label);

// All 4^n labels in lexicographic order over I < X < Y < Z.
std::vector<std::string> pauli_labels(std::size_t qubits);

struct PauliTerm {
  std::string label;
  double coefficient;
};

// A = sum_i c_i P_i with c_i = Tr(A P_i) / 2^n, in lexicographic label order.
// Coefficients with |c_i| < kPruneTol are omitted. Throws
// DimensionNotPowerOfTwo.
std::vector<PauliTerm> pauli_decompose(const Observable& a);
std::vector<PauliTerm> pauli_decompose(const Matrix& a);
Matrix pauli_reconstruct(const std::vector<PauliTerm>& terms, std::size_t qubits);

}  // namespace qem

#endif  // QEM_PAULI_HPP_
