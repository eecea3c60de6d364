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

#ifndef QEM_CIRCUIT_HPP_
#define QEM_CIRCUIT_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qem/channel.hpp"
#include "qem/linalg.hpp"
#include "qem/state.hpp"

namespace qem {

// n-qubit circuit of L unitary layers; after every layer each qubit suffers
// depolarizing noise at the rate of the experiment being run.
struct LayeredCircuitConfig {
  std::size_t qubits = 1;
  std::vector<Matrix> layers;
  std::vector<double> experiment_rates;

  std::size_t dim() const { return std::size_t{1} << qubits; }
  std::size_t depth() const { return layers.size(); }

  // Throws NotUnitary, InvalidRate, DimensionMismatch.
  void validate() const;
};

// Layers drawn from the Haar measure on U(2^n).
LayeredCircuitConfig random_layered_circuit(std::size_t qubits, std::size_t depth,
                                            std::vector<double> rates, std::uint64_t seed);

// U_L ... U_1.
Matrix ideal_unitary(const LayeredCircuitConfig& cfg);

// N_L o U_L o ... o N_1 o U_1 o U_1^dag o ... o U_L^dag: maps the ideal output
// to the noisy output of experiment k.
QuantumChannel effective_noise_channel(const LayeredCircuitConfig& cfg, std::size_t experiment);

// Layer-by-layer noisy evolution of psi_in for experiment k.
DensityMatrix simulate_noisy_circuit(const LayeredCircuitConfig& cfg, std::size_t experiment,
                                     const DensityMatrix& psi_in);

}  // namespace qem

#endif  // QEM_CIRCUIT_HPP_
