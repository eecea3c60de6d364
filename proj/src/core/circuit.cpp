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

#include "qem/circuit.hpp"

#include <string>

#include "qem/errors.hpp"
#include "qem/tolerances.hpp"

namespace qem {

void LayeredCircuitConfig::validate() const {
  if (qubits < 1) fail(ErrorCode::kInvalidDimension, "circuit needs at least one qubit");
  if (experiment_rates.empty()) {
    fail(ErrorCode::kInvalidArgument, "circuit needs at least one experiment rate");
  }
  const auto d = static_cast<Eigen::Index>(dim());
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (layers[l].rows() != d || layers[l].cols() != d) {
      fail(ErrorCode::kDimensionMismatch, "layer " + std::to_string(l) + " has wrong shape");
    }
    if (!is_unitary(layers[l], kStructuralTol)) {
      fail(ErrorCode::kNotUnitary, "layer " + std::to_string(l) + " is not unitary");
    }
  }
  for (double e : experiment_rates) {
    if (!(e >= 0.0 && e <= 1.0)) {
      fail(ErrorCode::kInvalidRate, "depolarizing rate " + std::to_string(e) + " outside [0,1]");
    }
  }
}

LayeredCircuitConfig random_layered_circuit(std::size_t qubits, std::size_t depth,
                                            std::vector<double> rates, std::uint64_t seed) {
  LayeredCircuitConfig cfg{.qubits = qubits, .layers = {}, .experiment_rates = std::move(rates)};
  for (std::size_t l = 0; l < depth; ++l) {
    cfg.layers.push_back(haar_random_unitary(cfg.dim(), seed * 1000003ULL + l));
  }
  cfg.validate();
  return cfg;
}

Matrix ideal_unitary(const LayeredCircuitConfig& cfg) {
  Matrix u = Matrix::Identity(cfg.dim(), cfg.dim());
  for (const auto& layer : cfg.layers) u = layer * u;
  return u;
}

QuantumChannel effective_noise_channel(const LayeredCircuitConfig& cfg, std::size_t experiment) {
  cfg.validate();
  if (experiment >= cfg.experiment_rates.size()) {
    fail(ErrorCode::kInvalidArgument, "experiment index out of range");
  }
  const QuantumChannel noise = standard_channel(
      ChannelKind::kLocalDepolarizing,
      {.rate = cfg.experiment_rates[experiment], .qubits = cfg.qubits});
  QuantumChannel out = QuantumChannel::unitary(ideal_unitary(cfg).adjoint());
  for (const auto& layer : cfg.layers) {
    out = compose(QuantumChannel::unitary(layer), out);
    out = compose(noise, out);
  }
  return out;
}

DensityMatrix simulate_noisy_circuit(const LayeredCircuitConfig& cfg, std::size_t experiment,
                                     const DensityMatrix& psi_in) {
  cfg.validate();
  if (experiment >= cfg.experiment_rates.size()) {
    fail(ErrorCode::kInvalidArgument, "experiment index out of range");
  }
  if (psi_in.dim() != cfg.dim()) {
    fail(ErrorCode::kDimensionMismatch, "input state does not match circuit width");
  }
  const QuantumChannel noise = standard_channel(
      ChannelKind::kLocalDepolarizing,
      {.rate = cfg.experiment_rates[experiment], .qubits = cfg.qubits});
  Matrix rho = psi_in.matrix();
  for (const auto& layer : cfg.layers) {
    rho = layer * rho * layer.adjoint();
    rho = noise.apply(rho);
  }
  return DensityMatrix::trusted(std::move(rho));
}

}  // namespace qem
