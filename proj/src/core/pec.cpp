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

#include "qem/pec.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qem/errors.hpp"
#include "qem/pauli.hpp"
#include "qem/tolerances.hpp"

namespace qem {

RealMatrix pauli_transfer_matrix(const QuantumChannel& ch) {
  if (ch.dim_in() != ch.dim_out()) {
    fail(ErrorCode::kDimensionMismatch, "transfer matrix needs a square channel");
  }
  const std::size_t n = qubit_count(ch.dim_in());
  const auto labels = pauli_labels(n);
  std::vector<Matrix> paulis;
  paulis.reserve(labels.size());
  for (const auto& l : labels) paulis.push_back(pauli_string_matrix(l));
  const auto m = static_cast<Eigen::Index>(labels.size());
  const double norm = static_cast<double>(ch.dim_in());
  RealMatrix ptm(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Matrix image = ch.apply(paulis[j]);
    for (Eigen::Index i = 0; i < m; ++i) {
      ptm(i, j) = trace_product(paulis[i], image).real() / norm;
    }
  }
  return ptm;
}

std::vector<QuantumChannel> pauli_conjugation_basis(std::size_t qubits) {
  std::vector<QuantumChannel> basis;
  for (const auto& l : pauli_labels(qubits)) {
    basis.push_back(QuantumChannel::unitary(pauli_string_matrix(l)));
  }
  return basis;
}

QuasiProbDecomposition quasiprob_decompose(const QuantumChannel& target,
                                           const std::vector<QuantumChannel>& basis,
                                           const std::vector<std::string>& labels) {
  if (basis.empty() || basis.size() != labels.size()) {
    fail(ErrorCode::kInvalidArgument, "basis and labels must be non-empty and aligned");
  }
  const RealMatrix r = pauli_transfer_matrix(target);
  Eigen::JacobiSVD<RealMatrix> svd(r);
  if (svd.singularValues().minCoeff() < kPruneTol) {
    fail(ErrorCode::kNotInvertibleChannel, "target channel has a singular transfer matrix");
  }
  const RealMatrix r_inv = r.inverse();
  const Eigen::Index m = r.size();
  RealMatrix system(m, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].dim_in() != target.dim_in() || basis[j].dim_out() != target.dim_out()) {
      fail(ErrorCode::kDimensionMismatch, "basis channel does not match target");
    }
    const RealMatrix b = pauli_transfer_matrix(basis[j]);
    system.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const RealVector>(b.data(), m);
  }
  const Eigen::Map<const RealVector> rhs(r_inv.data(), m);
  Eigen::ColPivHouseholderQR<RealMatrix> qr(system);
  qr.setThreshold(kPruneTol);
  if (qr.rank() < system.cols()) {
    fail(ErrorCode::kSingularBasis, "basis transfer matrices are linearly dependent");
  }
  const RealVector c = qr.solve(rhs);
  if ((system * c - rhs).cwiseAbs().maxCoeff() > kStructuralTol) {
    fail(ErrorCode::kSingularBasis, "basis does not span the inverse map");
  }

  QuasiProbDecomposition out;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const double cj = c(static_cast<Eigen::Index>(j));
    if (std::abs(cj) < kPruneTol) continue;
    out.basis_labels.push_back(labels[j]);
    out.basis.push_back(basis[j]);
    out.coefficients.push_back(cj);
    out.gamma += std::abs(cj);
  }
  return out;
}

QuasiProbDecomposition quasiprob_decompose(const QuantumChannel& target) {
  const std::size_t n = qubit_count(target.dim_in());
  return quasiprob_decompose(target, pauli_conjugation_basis(n), pauli_labels(n));
}

MitigationProtocolSpec pec_spec(const QuantumChannel& ch, const QuasiProbDecomposition& decomp,
                                const Observable& a) {
  if (a.dim() != ch.dim_out()) {
    fail(ErrorCode::kDimensionMismatch, "observable does not match channel");
  }
  if (decomp.coefficients.empty() || decomp.basis.size() != decomp.coefficients.size()) {
    fail(ErrorCode::kInvalidArgument, "empty quasi-probability decomposition");
  }
  const EigenMeasurement meas = eigenbasis_measurement(a);
  std::vector<Matrix> elements;
  std::vector<double> estimator;
  for (std::size_t j = 0; j < decomp.basis.size(); ++j) {
    const double cj = decomp.coefficients[j];
    const double pj = std::abs(cj) / decomp.gamma;
    const double sign = cj < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < meas.projectors.size(); ++i) {
      elements.push_back(pj * decomp.basis[j].apply_adjoint(meas.projectors[i]));
      estimator.push_back(decomp.gamma * sign * meas.values[i]);
    }
  }
  MitigationProtocolSpec spec;
  spec.protocol = "pec";
  spec.bias_description = "exact inverse of the noise channel; zero bias";
  spec.shape = ProtocolShape::uniform(ch, 1, 1, 0.0);
  spec.povms.push_back(Povm::from_elements(std::move(elements)));
  spec.estimator = std::move(estimator);
  spec.validate();
  return spec;
}

}  // namespace qem
