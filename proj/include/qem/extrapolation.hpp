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

#ifndef QEM_EXTRAPOLATION_HPP_
#define QEM_EXTRAPOLATION_HPP_

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "qem/channel.hpp"
#include "qem/mitigation.hpp"
#include "qem/state.hpp"

namespace qem {

struct ExtrapolationConfig {
  std::vector<double> boosts;        // c_0 = 1 < c_1 < ... (distinct, >= 1)
  std::vector<double> coefficients;  // Richardson weights
  std::size_t order() const { return boosts.empty() ? 0 : boosts.size() - 1; }
  double spread() const;  // sum |gamma_r|
};

// Solves sum_r gamma_r c_r^t = [t == 0] for t = 0..R. Throws DuplicateNodes,
// InvalidArgument (fewer than two nodes, c_0 != 1, c_r < 1) and
// NumericalMismatch when residuals exceed 1e-10.
ExtrapolationConfig richardson_coefficients(const std::vector<double>& boosts);
// Integer boosts c_r = r + 1.
ExtrapolationConfig richardson_coefficients(std::size_t order);

// A one-parameter noise family xi -> N_xi with N_0 = id.
struct NoiseFamily {
  std::string name;
  std::size_t dim = 2;
  double max_strength = 1.0;
  std::function<QuantumChannel(double)> at;
};

// "depolarizing" (global on n qubits, linear), "dephasing" (linear),
// "double_dephasing" (two dephasing layers, quadratic) and
// "continuous_dephasing" (rate (1 - e^{-2 xi})/2, every order).
NoiseFamily noise_family(std::string_view name, std::size_t qubits = 1);
std::vector<std::string> noise_family_names();

// Upper bound on max over states and normalized A of the bias of
// sum_r gamma_r N_{c_r xi}, from the transfer matrix of the residual map.
double extrapolation_bias_bound(const NoiseFamily& family, double base_strength,
                                const ExtrapolationConfig& cfg);

// (1, R+1) protocol measuring A's eigenbasis at each boosted strength and
// outputting sum_k gamma_k a_k. Throws BoostOutOfRange.
MitigationProtocolSpec extrapolation_spec(const NoiseFamily& family, double base_strength,
                                          const ExtrapolationConfig& cfg, const Observable& a);

}  // namespace qem

#endif  // QEM_EXTRAPOLATION_HPP_
