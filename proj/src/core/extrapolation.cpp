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

#include "qem/extrapolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qem/errors.hpp"
#include "qem/pec.hpp"
#include "qem/tolerances.hpp"

namespace qem {

namespace {

constexpr double kVandermondeResidualTol = 1e-10;

void check_boosts(const NoiseFamily& family, double base, const ExtrapolationConfig& cfg) {
  if (!(base >= 0.0)) fail(ErrorCode::kBoostOutOfRange, "base strength must be non-negative");
  for (double c : cfg.boosts) {
    if (c * base > family.max_strength + kStructuralTol) {
      fail(ErrorCode::kBoostOutOfRange, "boosted strength " + std::to_string(c * base) +
                                            " exceeds " + std::to_string(family.max_strength));
    }
  }
}

double clamp_strength(const NoiseFamily& family, double x) {
  return std::min(x, family.max_strength);
}

}  // namespace

double ExtrapolationConfig::spread() const {
  double s = 0.0;
  for (double g : coefficients) s += std::abs(g);
  return s;
}

ExtrapolationConfig richardson_coefficients(const std::vector<double>& boosts) {
  if (boosts.size() < 2) fail(ErrorCode::kInvalidArgument, "need at least two boost factors");
  for (std::size_t i = 0; i < boosts.size(); ++i) {
    for (std::size_t j = i + 1; j < boosts.size(); ++j) {
      if (std::abs(boosts[i] - boosts[j]) < kPruneTol) {
        fail(ErrorCode::kDuplicateNodes, "boost factors must be distinct");
      }
    }
  }
  if (std::abs(boosts.front() - 1.0) > kStructuralTol) {
    fail(ErrorCode::kInvalidArgument, "first boost factor must be 1");
  }
  for (double c : boosts) {
    if (!(c >= 1.0 - kStructuralTol) || !std::isfinite(c)) {
      fail(ErrorCode::kInvalidArgument, "boost factors must be >= 1");
    }
  }
  const auto m = static_cast<Eigen::Index>(boosts.size());
  Eigen::MatrixXd v(m, m);
  for (Eigen::Index t = 0; t < m; ++t) {
    for (Eigen::Index r = 0; r < m; ++r) v(t, r) = std::pow(boosts[r], static_cast<double>(t));
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(0) = 1.0;
  const Eigen::VectorXd g = v.fullPivLu().solve(rhs);
  const double residual = (v * g - rhs).cwiseAbs().maxCoeff();
  if (!(residual < kVandermondeResidualTol)) {
    fail(ErrorCode::kNumericalMismatch,
         "Richardson residual " + std::to_string(residual) + " too large");
  }
  ExtrapolationConfig cfg;
  cfg.boosts = boosts;
  cfg.coefficients.assign(g.data(), g.data() + m);
  return cfg;
}

ExtrapolationConfig richardson_coefficients(std::size_t order) {
  if (order < 1) fail(ErrorCode::kInvalidArgument, "order must be >= 1");
  std::vector<double> boosts;
  for (std::size_t r = 0; r <= order; ++r) boosts.push_back(static_cast<double>(r + 1));
  return richardson_coefficients(boosts);
}

NoiseFamily noise_family(std::string_view name, std::size_t qubits) {
  NoiseFamily f;
  f.name = std::string(name);
  if (name == "depolarizing") {
    if (qubits < 1) fail(ErrorCode::kInvalidDimension, "need n >= 1 qubits");
    f.dim = std::size_t{1} << qubits;
    const std::size_t d = f.dim;
    f.at = [d](double x) {
      return standard_channel(ChannelKind::kDepolarizingD, {.rate = x, .dim = d});
    };
    return f;
  }
  if (qubits != 1) fail(ErrorCode::kInvalidDimension, f.name + " family is single-qubit");
  if (name == "dephasing") {
    f.at = [](double x) { return standard_channel(ChannelKind::kDephasing, {.rate = x}); };
  } else if (name == "double_dephasing") {
    f.at = [](double x) {
      const QuantumChannel z = standard_channel(ChannelKind::kDephasing, {.rate = x});
      return compose(z, z);
    };
  } else if (name == "continuous_dephasing") {
    f.max_strength = 10.0;
    f.at = [](double x) {
      return standard_channel(ChannelKind::kDephasing, {.rate = 0.5 * (1.0 - std::exp(-2.0 * x))});
    };
  } else {
    fail(ErrorCode::kParseError, "unknown noise family '" + f.name + "'");
  }
  return f;
}

std::vector<std::string> noise_family_names() {
  return {"depolarizing", "dephasing", "double_dephasing", "continuous_dephasing"};
}

double extrapolation_bias_bound(const NoiseFamily& family, double base_strength,
                                const ExtrapolationConfig& cfg) {
  check_boosts(family, base_strength, cfg);
  const auto d = static_cast<double>(family.dim);
  RealMatrix residual;
  for (std::size_t r = 0; r < cfg.boosts.size(); ++r) {
    const RealMatrix ptm =
        pauli_transfer_matrix(family.at(clamp_strength(family, cfg.boosts[r] * base_strength)));
    if (r == 0) {
      residual = cfg.coefficients[r] * ptm;
    } else {
      residual += cfg.coefficients[r] * ptm;
    }
  }
  residual -= RealMatrix::Identity(residual.rows(), residual.cols());
  // Orthonormal Pauli coordinates: a pure state is e_0/sqrt(d) plus a
  // traceless part of norm sqrt(1 - 1/d). ||X||_1 <= sqrt(d) ||X||_2.
  const double offset = residual.col(0).norm() / std::sqrt(d);
  const Eigen::Index m = residual.cols();
  double sigma = 0.0;
  if (m > 1) {
    Eigen::JacobiSVD<RealMatrix> svd(residual.rightCols(m - 1));
    sigma = svd.singularValues()(0);
  }
  const double bound = 0.5 * std::sqrt(d) * (offset + sigma * std::sqrt(1.0 - 1.0 / d));
  return std::min(bound, 0.5);
}

MitigationProtocolSpec extrapolation_spec(const NoiseFamily& family, double base_strength,
                                          const ExtrapolationConfig& cfg, const Observable& a) {
  if (cfg.boosts.size() < 2 || cfg.coefficients.size() != cfg.boosts.size()) {
    fail(ErrorCode::kInvalidArgument, "extrapolation config is incomplete");
  }
  if (a.dim() != family.dim) fail(ErrorCode::kDimensionMismatch, "observable does not match family");
  check_boosts(family, base_strength, cfg);

  const EigenMeasurement meas = eigenbasis_measurement(a);
  const std::size_t k_count = cfg.boosts.size();
  MitigationProtocolSpec spec;
  spec.protocol = "richardson";
  spec.shape.inputs = 1;
  spec.shape.experiments = k_count;
  spec.shape.qubits = qubit_count(family.dim);
  for (std::size_t k = 0; k < k_count; ++k) {
    spec.shape.channels.push_back(
        {family.at(clamp_strength(family, cfg.boosts[k] * base_strength))});
    spec.povms.push_back(Povm::from_elements(meas.projectors));
  }
  spec.shape.max_bias = extrapolation_bias_bound(family, base_strength, cfg);
  spec.bias_description = "transfer-matrix upper bound on the residual map";

  const std::size_t d = meas.values.size();
  std::size_t table = 1;
  for (std::size_t k = 0; k < k_count; ++k) table *= d;
  spec.estimator.resize(table);
  std::vector<std::size_t> digits(k_count, 0);
  for (std::size_t flat = 0; flat < table; ++flat) {
    double e = 0.0;
    for (std::size_t k = 0; k < k_count; ++k) e += cfg.coefficients[k] * meas.values[digits[k]];
    spec.estimator[flat] = e;
    for (std::size_t k = k_count; k-- > 0;) {
      if (++digits[k] < d) break;
      digits[k] = 0;
    }
  }
  spec.validate();
  return spec;
}

}  // namespace qem
