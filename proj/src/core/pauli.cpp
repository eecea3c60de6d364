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

#include "qem/pauli.hpp"

#include <cmath>
#include <string>

#include "qem/errors.hpp"
#include "qem/state.hpp"
#include "qem/tolerances.hpp"

namespace qem {

Matrix pauli_matrix(char p) {
  Matrix m(2, 2);
  switch (p) {
    case 'I': m << 1.0, 0.0, 0.0, 1.0; break;
    case 'X': m << 0.0, 1.0, 1.0, 0.0; break;
    case 'Y': m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0; break;
    case 'Z': m << 1.0, 0.0, 0.0, -1.0; break;
    default:
      fail(ErrorCode::kParseError, std::string("unknown Pauli '") + p + "'");
  }
  return m;
}

Matrix pauli_string_matrix(std::string_view label) {
  if (label.empty()) fail(ErrorCode::kParseError, "empty Pauli label");
  Matrix out = pauli_matrix(label.front());
  for (std::size_t i = 1; i < label.size(); ++i) out = kron(out, pauli_matrix(label[i]));
  return out;
}

std::vector<std::string> pauli_labels(std::size_t qubits) {
  static constexpr char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::vector<std::string> labels{""};
  for (std::size_t q = 0; q < qubits; ++q) {
    std::vector<std::string> next;
    next.reserve(labels.size() * 4);
    for (const auto& prefix : labels) {
      for (char c : kLetters) next.push_back(prefix + c);
    }
    labels = std::move(next);
  }
  return labels;
}

std::vector<PauliTerm> pauli_decompose(const Matrix& a) {
  const std::size_t dim = static_cast<std::size_t>(a.rows());
  const std::size_t n = qubit_count(dim);
  std::vector<PauliTerm> terms;
  for (const auto& label : pauli_labels(n)) {
    const double c =
        trace_product(a, pauli_string_matrix(label)).real() / static_cast<double>(dim);
    if (std::abs(c) >= kPruneTol) terms.push_back({label, c});
  }
  return terms;
}

std::vector<PauliTerm> pauli_decompose(const Observable& a) {
  return pauli_decompose(a.matrix());
}

Matrix pauli_reconstruct(const std::vector<PauliTerm>& terms, std::size_t qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  Matrix out = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (t.label.size() != qubits) {
      fail(ErrorCode::kDimensionMismatch, "Pauli label length differs from qubit count");
    }
    out += t.coefficient * pauli_string_matrix(t.label);
  }
  return out;
}

}  // namespace qem
