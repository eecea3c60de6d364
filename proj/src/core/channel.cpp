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

#include "qem/channel.hpp"

#include <cmath>
#include <string>

#include "qem/errors.hpp"
#include "qem/pauli.hpp"
#include "qem/tolerances.hpp"

namespace qem {

namespace {

std::vector<Matrix> prune(std::vector<Matrix> kraus) {
  std::vector<Matrix> kept;
  kept.reserve(kraus.size());
  for (auto& k : kraus) {
    if (k.norm() >= kPruneTol) kept.push_back(std::move(k));
  }
  return kept;
}

void check_rate(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    fail(ErrorCode::kInvalidRate, "noise rate " + std::to_string(rate) + " outside [0,1]");
  }
}

}  // namespace

QuantumChannel QuantumChannel::from_kraus(std::vector<Matrix> kraus) {
  if (kraus.empty()) fail(ErrorCode::kInvalidArgument, "channel needs Kraus operators");
  const auto out = static_cast<std::size_t>(kraus.front().rows());
  const auto in = static_cast<std::size_t>(kraus.front().cols());
  if (in == 0 || out == 0) fail(ErrorCode::kInvalidDimension, "empty Kraus operator");
  for (const auto& k : kraus) {
    if (static_cast<std::size_t>(k.rows()) != out ||
        static_cast<std::size_t>(k.cols()) != in) {
      fail(ErrorCode::kDimensionMismatch, "Kraus operators have differing shapes");
    }
  }
  kraus = prune(std::move(kraus));
  if (kraus.empty()) fail(ErrorCode::kNotTracePreserving, "all Kraus operators vanish");
  QuantumChannel ch(in, out, std::move(kraus));
  const double err = ch.trace_preservation_error();
  if (err > kStructuralTol) {
    fail(ErrorCode::kNotTracePreserving,
         "sum K^dag K deviates from identity by " + std::to_string(err));
  }
  return ch;
}

QuantumChannel QuantumChannel::identity(std::size_t dim) {
  if (dim == 0) fail(ErrorCode::kInvalidDimension, "dimension must be positive");
  return QuantumChannel(dim, dim, {Matrix::Identity(dim, dim)});
}

QuantumChannel QuantumChannel::unitary(const Matrix& u) {
  if (!is_unitary(u, kStructuralTol)) fail(ErrorCode::kNotUnitary, "matrix is not unitary");
  const auto d = static_cast<std::size_t>(u.rows());
  return QuantumChannel(d, d, {u});
}

DensityMatrix QuantumChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix::trusted(apply(rho.matrix()));
}

Matrix QuantumChannel::apply(const Matrix& op) const {
  if (static_cast<std::size_t>(op.rows()) != dim_in_ ||
      static_cast<std::size_t>(op.cols()) != dim_in_) {
    fail(ErrorCode::kDimensionMismatch,
         "channel input dimension " + std::to_string(dim_in_) + " does not match operator " +
             std::to_string(op.rows()));
  }
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const auto& k : kraus_) out.noalias() += k * op * k.adjoint();
  return out;
}

Matrix QuantumChannel::apply_adjoint(const Matrix& op) const {
  if (static_cast<std::size_t>(op.rows()) != dim_out_ ||
      static_cast<std::size_t>(op.cols()) != dim_out_) {
    fail(ErrorCode::kDimensionMismatch, "adjoint channel dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * op * k;
  return out;
}

double QuantumChannel::trace_preservation_error() const {
  Matrix sum = Matrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  return max_abs(sum - Matrix::Identity(dim_in_, dim_in_));
}

Matrix QuantumChannel::choi() const {
  const std::size_t n = dim_in_ * dim_out_;
  Matrix j = Matrix::Zero(n, n);
  for (const auto& k : kraus_) {
    const Eigen::Map<const Vector> v(k.data(), static_cast<Eigen::Index>(n));
    j.noalias() += v * v.adjoint();
  }
  return j;
}

QuantumChannel QuantumChannel::compressed() const {
  const HermitianEigen eig = hermitian_eigen(choi());
  std::vector<Matrix> kraus;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
    const double lambda = eig.values(i);
    if (lambda < kPruneTol) break;
    Matrix k(dim_out_, dim_in_);
    Eigen::Map<Vector>(k.data(), k.size()) = std::sqrt(lambda) * eig.vectors.col(i);
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(dim_in_, dim_out_, std::move(kraus));
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
  if (outer.dim_in() != inner.dim_out()) {
    fail(ErrorCode::kDimensionMismatch, "cannot compose channels of mismatched dimension");
  }
  std::vector<Matrix> kraus;
  kraus.reserve(outer.kraus().size() * inner.kraus().size());
  for (const auto& a : outer.kraus()) {
    for (const auto& b : inner.kraus()) {
      Matrix k = a * b;
      if (k.norm() >= kPruneTol) kraus.push_back(std::move(k));
    }
  }
  QuantumChannel out = QuantumChannel::from_kraus(std::move(kraus));
  if (out.kraus().size() > out.dim_in() * out.dim_out()) return out.compressed();
  return out;
}

QuantumChannel tensor(const QuantumChannel& a, const QuantumChannel& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus()) {
    for (const auto& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

QuantumChannel tensor_power(const QuantumChannel& a, std::size_t copies) {
  if (copies == 0) fail(ErrorCode::kInvalidArgument, "tensor power needs at least one copy");
  QuantumChannel out = a;
  for (std::size_t i = 1; i < copies; ++i) out = tensor(out, a);
  return out;
}

QuantumChannel standard_channel(ChannelKind kind, const ChannelParams& params) {
  check_rate(params.rate);
  const double e = params.rate;
  switch (kind) {
    case ChannelKind::kDephasing:
      return QuantumChannel::from_kraus(
          {std::sqrt(1.0 - e) * pauli_matrix('I'), std::sqrt(e) * pauli_matrix('Z')});
    case ChannelKind::kDepolarizingQubit: {
      const double side = std::sqrt(e / 4.0);
      return QuantumChannel::from_kraus({std::sqrt(1.0 - 0.75 * e) * pauli_matrix('I'),
                                         side * pauli_matrix('X'), side * pauli_matrix('Y'),
                                         side * pauli_matrix('Z')});
    }
    case ChannelKind::kDepolarizingD: {
      const std::size_t d = params.dim;
      if (d < 2) fail(ErrorCode::kInvalidDimension, "depolarizing needs d >= 2");
      // I/d Tr(rho) = (1/d) sum_ij |i><j| rho |j><i|
      std::vector<Matrix> kraus{std::sqrt(1.0 - e) * Matrix::Identity(d, d)};
      const double w = std::sqrt(e / static_cast<double>(d));
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          Matrix k = Matrix::Zero(d, d);
          k(i, j) = w;
          kraus.push_back(std::move(k));
        }
      }
      return QuantumChannel::from_kraus(std::move(kraus));
    }
    case ChannelKind::kLocalDepolarizing: {
      if (params.qubits < 1) fail(ErrorCode::kInvalidDimension, "need n >= 1 qubits");
      const QuantumChannel single =
          standard_channel(ChannelKind::kDepolarizingQubit, {.rate = e});
      return tensor_power(single, params.qubits);
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown channel kind");
}

ChannelKind parse_channel_kind(std::string_view name) {
  if (name == "dephasing") return ChannelKind::kDephasing;
  if (name == "depolarizing" || name == "depolarizing_qubit") {
    return ChannelKind::kDepolarizingQubit;
  }
  if (name == "depolarizing_d") return ChannelKind::kDepolarizingD;
  if (name == "local_depolarizing" || name == "local_depolarizing_layer") {
    return ChannelKind::kLocalDepolarizing;
  }
  fail(ErrorCode::kParseError, "unknown noise model '" + std::string(name) + "'");
}

std::string_view channel_kind_name(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kDephasing: return "dephasing";
    case ChannelKind::kDepolarizingQubit: return "depolarizing_qubit";
    case ChannelKind::kDepolarizingD: return "depolarizing_d";
    case ChannelKind::kLocalDepolarizing: return "local_depolarizing_layer";
  }
  return "unknown";
}

}  // namespace qem
