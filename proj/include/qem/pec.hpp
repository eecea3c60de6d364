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

#ifndef QEM_PEC_HPP_
#define QEM_PEC_HPP_

#include <string>
#include <vector>

#include "qem/channel.hpp"
#include "qem/linalg.hpp"
#include "qem/mitigation.hpp"
#include "qem/state.hpp"

namespace qem {

// Entry (i, j) = Tr(P_i ch(P_j)) / 2^n over lexicographic Pauli strings.
RealMatrix pauli_transfer_matrix(const QuantumChannel& ch);

struct QuasiProbDecomposition {
  std::vector<std::string> basis_labels;
  std::vector<QuantumChannel> basis;
  std::vector<double> coefficients;
  double gamma = 0.0;  // sum |c_j|
};

// Conjugation by each Pauli string on n qubits, labelled by the string.
std::vector<QuantumChannel> pauli_conjugation_basis(std::size_t qubits);

// Solves target^{-1} = sum_j c_j basis_j in Pauli-transfer space. Terms with
// |c_j| < 1e-12 are dropped. Throws NotInvertibleChannel, SingularBasis.
QuasiProbDecomposition quasiprob_decompose(const QuantumChannel& target,
                                           const std::vector<QuantumChannel>& basis,
                                           const std::vector<std::string>& labels);
// Pauli-conjugation basis on the target's qubits.
QuasiProbDecomposition quasiprob_decompose(const QuantumChannel& target);

// (1,1) protocol: sample B_j with probability |c_j|/gamma, measure A in a
// fixed eigenbasis, output gamma sgn(c_j) a. Outcome index = j * d + a.
MitigationProtocolSpec pec_spec(const QuantumChannel& ch, const QuasiProbDecomposition& decomp,
                                const Observable& a);

}  // namespace qem

#endif  // QEM_PEC_HPP_
