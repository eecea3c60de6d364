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

#ifndef QEM_CHANNEL_HPP_
#define QEM_CHANNEL_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "qem/linalg.hpp"
#include "qem/state.hpp"

namespace qem {

// CPTP map in Kraus form. Kraus operators with Frobenius norm below
// kPruneTol are dropped at construction.
class QuantumChannel {
 public:
  // Throws NotTracePreserving when sum K^dag K deviates from I by more than
  // kStructuralTol, DimensionMismatch when operator shapes disagree.
  static QuantumChannel from_kraus(std::vector<Matrix> kraus);
  static QuantumChannel identity(std::size_t dim);
  // Throws NotUnitary.
  static QuantumChannel unitary(const Matrix& u);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  // sum_j K_j rho K_j^dag. Throws DimensionMismatch.
  DensityMatrix apply(const DensityMatrix& rho) const;
  Matrix apply(const Matrix& op) const;
  // Heisenberg picture: sum_j K_j^dag X K_j.
  Matrix apply_adjoint(const Matrix& op) const;

  // max |sum K^dag K - I|.
  double trace_preservation_error() const;

  // Choi matrix sum_k vec(K_k) vec(K_k)^dag with column-stacking vec.
  Matrix choi() const;

  // Equivalent channel with at most dim_in*dim_out Kraus operators, rebuilt
  // from the Choi eigendecomposition (eigenvalues below kPruneTol dropped).
  QuantumChannel compressed() const;

 private:
  QuantumChannel(std::size_t in, std::size_t out, std::vector<Matrix> kraus)
      : dim_in_(in), dim_out_(out), kraus_(std::move(kraus)) {}

  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<Matrix> kraus_;
};

// outer o inner. Kraus sets multiply; the result is compressed once it
// exceeds the Choi rank bound.
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);
QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b);
QuantumChannel tensor_power(const QuantumChannel& a, std::size_t copies);

enum class ChannelKind {
  kDephasing,          // (1-e) rho + e Z rho Z
  kDepolarizingQubit,  // (1-e) rho + e I/2
  kDepolarizingD,      // (1-e) rho + e I/d
  kLocalDepolarizing,  // qubit depolarizing on each of n qubits
};

struct ChannelParams {
  double rate = 0.0;
  std::size_t dim = 2;     // kDepolarizingD
  std::size_t qubits = 1;  // kLocalDepolarizing
};

// Throws InvalidRate (rate outside [0,1]) and InvalidDimension.
QuantumChannel standard_channel(ChannelKind kind, const ChannelParams& params);

ChannelKind parse_channel_kind(std::string_view name);
std::string_view channel_kind_name(ChannelKind kind);

}  // namespace qem

#endif  // QEM_CHANNEL_HPP_
