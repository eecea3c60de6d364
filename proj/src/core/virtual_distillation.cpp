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

#include "qem/virtual_distillation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include <Eigen/Dense>

#include "qem/errors.hpp"
#include "qem/pauli.hpp"
#include "qem/random.hpp"

namespace qem {

namespace {

Matrix complete_basis(const Vector& ket) {
  const auto d = ket.size();
  if (d < 2) fail(ErrorCode::kInvalidDimension, "spectral model needs d >= 2");
  const double norm = ket.norm();
  if (norm < kPruneTol) fail(ErrorCode::kInvalidArgument, "ideal ket is zero");
  Matrix seed(d, d + 1);
  seed.col(0) = ket / norm;
  seed.rightCols(d) = Matrix::Identity(d, d);
  Eigen::HouseholderQR<Matrix> qr(seed);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Complex overlap = q.col(0).dot(seed.col(0));
  q.col(0) *= overlap / std::abs(overlap);
  return q;
}

Matrix power_of(const Matrix& m, std::size_t q) {
  Matrix out = m;
  for (std::size_t i = 1; i < q; ++i) out = out * m;
  return out;
}

double pauli_weight(const Matrix& a) {
  const double norm = hermitian_eigenvalues(a).cwiseAbs().maxCoeff();
  if (norm < kPruneTol) return 0.0;
  const Matrix scaled = a * (0.5 / norm);
  double sum = 0.0;
  for (const auto& t : pauli_decompose(scaled)) sum += std::abs(t.coefficient);
  return sum;
}

}  // namespace

SpectralModel SpectralModel::make(double lambda, std::vector<double> rest,
                                  const Matrix& eigenbasis) {
  if (!(lambda > 0.5)) {
    fail(ErrorCode::kDominantEigenvalueTooSmall, "dominant eigenvalue must exceed 1/2");
  }
  const auto d = static_cast<std::size_t>(eigenbasis.rows());
  if (rest.size() + 1 != d || static_cast<std::size_t>(eigenbasis.cols()) != d) {
    fail(ErrorCode::kDimensionMismatch, "need d - 1 remaining eigenvalues");
  }
  if (!is_unitary(eigenbasis, kStructuralTol)) {
    fail(ErrorCode::kNotUnitary, "eigenbasis is not orthonormal");
  }
  double total = lambda;
  for (double v : rest) {
    if (v < -kStructuralTol) fail(ErrorCode::kNotPositive, "negative eigenvalue");
    if (v > lambda) fail(ErrorCode::kInvalidArgument, "dominant eigenvalue is not the largest");
    total += v;
  }
  if (std::abs(total - 1.0) > kStructuralTol) {
    fail(ErrorCode::kNotUnitTrace, "eigenvalues must sum to 1");
  }
  for (auto& v : rest) v = std::max(v, 0.0);
  return SpectralModel(lambda, std::move(rest), eigenbasis);
}

SpectralModel SpectralModel::around(const Vector& ideal_ket, double lambda,
                                    std::vector<double> rest) {
  return make(lambda, std::move(rest), complete_basis(ideal_ket));
}

SpectralModel SpectralModel::uniform(const Vector& ideal_ket, double lambda) {
  const auto d = static_cast<std::size_t>(ideal_ket.size());
  if (d < 2) fail(ErrorCode::kInvalidDimension, "spectral model needs d >= 2");
  return around(ideal_ket, lambda,
                std::vector<double>(d - 1, (1.0 - lambda) / static_cast<double>(d - 1)));
}

DensityMatrix SpectralModel::ideal_state() const { return DensityMatrix::pure(basis_.col(0)); }

DensityMatrix SpectralModel::noisy_state() const {
  RealVector spectrum(dim());
  spectrum(0) = lambda_;
  for (std::size_t k = 0; k < rest_.size(); ++k) spectrum(static_cast<Eigen::Index>(k + 1)) = rest_[k];
  return DensityMatrix::trusted(basis_ * spectrum.cast<Complex>().asDiagonal() * basis_.adjoint());
}

QuantumChannel SpectralModel::channel() const {
  const std::size_t d = dim();
  const double first = rest_.front();
  const bool uniform_rest =
      std::all_of(rest_.begin(), rest_.end(), [&](double v) { return std::abs(v - first) < kStructuralTol; });
  if (uniform_rest) {
    const double rate = (1.0 - lambda_) * static_cast<double>(d) / static_cast<double>(d - 1);
    return standard_channel(ChannelKind::kDepolarizingD, {.rate = std::min(rate, 1.0), .dim = d});
  }
  // S e_j = e_{j+1}: S^k maps the ideal state onto e_k.
  Matrix shift_local = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < d; ++j) shift_local((j + 1) % d, j) = 1.0;
  const Matrix shift = basis_ * shift_local * basis_.adjoint();
  std::vector<Matrix> kraus{std::sqrt(lambda_) * Matrix::Identity(d, d)};
  Matrix power = Matrix::Identity(d, d);
  for (double w : rest_) {
    power = shift * power;
    kraus.push_back(std::sqrt(w) * power);
  }
  return QuantumChannel::from_kraus(std::move(kraus));
}

double SpectralModel::bias_bound(std::size_t copies) const {
  double sum = 0.0;
  for (double v : rest_) sum += std::pow(v / lambda_, static_cast<double>(copies));
  return 0.5 * sum;
}

VdProbability vd_outcome_probability(const DensityMatrix& rho, const Matrix& w, std::size_t copies,
                                     const DenseLimits& limits) {
  if (copies < 2) fail(ErrorCode::kInvalidArgument, "virtual distillation needs Q >= 2");
  const std::size_t d = rho.dim();
  if (static_cast<std::size_t>(w.rows()) != d || static_cast<std::size_t>(w.cols()) != d) {
    fail(ErrorCode::kDimensionMismatch, "W does not match the state");
  }
  if (hermiticity_error(w) > kStructuralTol ||
      max_abs(w * w - Matrix::Identity(d, d)) > kStructuralTol) {
    fail(ErrorCode::kNotInvolution, "W must be Hermitian with W^2 = I");
  }
  VdProbability out;
  out.closed_form = 0.5 * (1.0 + trace_product(w, power_of(rho.matrix(), copies)).real());

  double joint = 2.0;
  for (std::size_t q = 0; q < copies; ++q) joint *= static_cast<double>(d);
  if (joint > static_cast<double>(limits.max_dim)) {
    fail(ErrorCode::kProductTooLarge, "circuit simulation exceeds the dense cap");
  }
  const std::size_t reg = static_cast<std::size_t>(joint) / 2;
  const Matrix v = kron(w, Matrix::Identity(reg / d, reg / d)) * register_cyclic_shift(copies, d);
  // Controlled-V with the ancilla as the leading qubit.
  Matrix cv = Matrix::Zero(2 * reg, 2 * reg);
  cv.topLeftCorner(reg, reg) = Matrix::Identity(reg, reg);
  cv.bottomRightCorner(reg, reg) = v;
  Matrix h(2, 2);
  h << 1.0, 1.0, 1.0, -1.0;
  h /= std::sqrt(2.0);
  const Matrix h_anc = kron(h, Matrix::Identity(reg, reg));
  Matrix anc0 = Matrix::Zero(2, 2);
  anc0(0, 0) = 1.0;
  const Matrix input = kron(anc0, rho.tensor_power(copies).matrix());
  const Matrix circuit = h_anc * cv * h_anc;
  const Matrix output = circuit * input * circuit.adjoint();
  out.circuit = output.topLeftCorner(reg, reg).trace().real();

  if (std::abs(out.circuit - out.closed_form) > kStructuralTol) {
    fail(ErrorCode::kNumericalMismatch, "closed form and circuit disagree");
  }
  return out;
}

SpreadSearchResult search_pauli_weight(std::size_t qubits, const SpreadSearch& search) {
  const auto labels = pauli_labels(qubits);
  std::vector<Matrix> paulis;
  for (const auto& l : labels) paulis.push_back(pauli_string_matrix(l));
  const std::size_t d = std::size_t{1} << qubits;

  SpreadSearchResult best{0.5, "single_pauli"};
  if (qubits <= 2) {
    // Signs over the non-identity strings; the first sign is fixed by symmetry.
    const std::size_t terms = paulis.size() - 1;
    const std::size_t patterns = std::size_t{1} << (terms - 1);
    for (std::size_t mask = 0; mask < patterns; ++mask) {
      Matrix a = paulis[1];
      for (std::size_t t = 1; t < terms; ++t) {
        a += ((mask >> (t - 1)) & 1u ? -1.0 : 1.0) * paulis[t + 1];
      }
      const double v = pauli_weight(a);
      if (v > best.best_coefficient_sum + kStructuralTol) best = {v, "pauli_sign_pattern"};
    }
  }
  std::mt19937_64 gen(mix_seed(search.seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t s = 0; s < search.samples; ++s) {
    Matrix g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) g(i, j) = Complex(normal(gen), normal(gen));
    }
    const double v = pauli_weight(g + g.adjoint());
    if (v > best.best_coefficient_sum + kStructuralTol) best = {v, "random_hermitian"};
  }
  return best;
}

VirtualDistillationSpec vd_spec(const SpectralModel& model, std::size_t copies,
                                const Observable& a, const SpreadSearch& search) {
  if (copies < 2) fail(ErrorCode::kInvalidArgument, "virtual distillation needs Q >= 2");
  const std::size_t d = model.dim();
  if (a.dim() != d) fail(ErrorCode::kDimensionMismatch, "observable does not match model");
  const std::size_t n = qubit_count(d);
  const auto terms = pauli_decompose(a);
  if (terms.empty()) fail(ErrorCode::kInvalidArgument, "observable is zero");

  double gamma = 0.0;
  for (const auto& t : terms) gamma += std::abs(t.coefficient);
  const double scale = std::pow(model.lambda(), -static_cast<double>(copies));

  const Matrix shift = register_cyclic_shift(copies, d);
  const std::size_t reg = static_cast<std::size_t>(shift.rows());
  const Matrix id_reg = Matrix::Identity(reg, reg);
  const Matrix id_rest = Matrix::Identity(reg / d, reg / d);
  std::vector<Matrix> elements;
  std::vector<double> estimator;
  for (const auto& t : terms) {
    const double p = std::abs(t.coefficient) / gamma;
    const double sign = t.coefficient < 0.0 ? -1.0 : 1.0;
    const Matrix v = kron(pauli_string_matrix(t.label), id_rest) * shift;
    const Matrix sym = 0.5 * (v + v.adjoint());
    elements.push_back(0.5 * p * (id_reg + sym));
    elements.push_back(0.5 * p * (id_reg - sym));
    estimator.push_back(gamma * sign * scale);
    estimator.push_back(-gamma * sign * scale);
  }

  VirtualDistillationSpec out;
  out.bias_bound = model.bias_bound(copies);
  out.spread_for_observable = 2.0 * scale * gamma;
  out.single_pauli_witness = scale;
  const SpreadSearchResult found = search_pauli_weight(n, search);
  out.best_found_spread = 2.0 * scale * found.best_coefficient_sum;
  out.best_found_method = found.method;

  MitigationProtocolSpec& spec = out.spec;
  spec.protocol = "virtual_distillation";
  spec.shape = ProtocolShape::uniform(model.channel(), copies, 1, out.bias_bound);
  spec.povms.push_back(Povm::from_elements(std::move(elements)));
  spec.estimator = std::move(estimator);
  spec.bias_description = "sum over non-dominant eigenvalues of (lambda_k / lambda)^Q / 2";
  spec.validate();
  return out;
}

}  // namespace qem
