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

#ifndef QEM_SUBFID_HPP_
#define QEM_SUBFID_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "qem/linalg.hpp"
#include "qem/state.hpp"
#include "qem/tolerances.hpp"

namespace qem {

enum class OverlapMethod { kSwapTest, kDestructiveSwap, kCycleTest, kDestructiveCycle, kExact };
std::string_view overlap_method_name(OverlapMethod m);

struct OverlapEstimate {
  double value = 0.0;
  std::uint64_t shots = 0;
  double std_error = 0.0;
  OverlapMethod method = OverlapMethod::kExact;
};

struct TestProbability {
  double closed_form = 0.0;
  double circuit = 0.0;
};

// Ancilla-0 probability (1 + Tr(rho sigma)) / 2 of the controlled-SWAP test.
// Throws DimensionMismatch, ProductTooLarge, NumericalMismatch.
TestProbability swap_test_probability(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const DenseLimits& limits = {});

// Ancilla-0 probability (1 + Tr(rho sigma rho sigma)) / 2 of the controlled
// four-register cyclic shift applied to rho x sigma x rho x sigma.
TestProbability cycle_test_probability(const DensityMatrix& rho, const DensityMatrix& sigma,
                                       const DenseLimits& limits = {});

// Bell basis columns (Phi+, Phi-, Psi+, Psi-) and their SWAP eigenvalues.
struct SiteBasis {
  Matrix vectors;
  std::vector<Complex> eigenvalues;
};
const SiteBasis& bell_basis();
// Eigenbasis of the cyclic shift of four qubits; eigenvalues in {1, i, -1, -i}.
const SiteBasis& four_qubit_cycle_basis();

// Per-qubit-pair Bell measurements on rho x sigma; each shot scores the
// product of SWAP eigenvalues. Shot s draws from substream (seed, s).
OverlapEstimate destructive_swap_estimate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                          std::uint64_t shots, std::uint64_t seed,
                                          const DenseLimits& limits = {});

struct CycleEstimate {
  OverlapEstimate real;
  double imag_mean = 0.0;
  double imag_std_error = 0.0;
};

// Per-site measurement of the four-qubit cyclic shift on
// rho x sigma x rho x sigma; the real part of the eigenvalue product
// estimates Tr(rho sigma rho sigma).
CycleEstimate destructive_cycle_estimate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         std::uint64_t shots, std::uint64_t seed,
                                         const DenseLimits& limits = {});

struct SubFidelityEstimate {
  double value = 0.0;  // Tr rs + sqrt(2 [(Tr rs)^2 - Tr rsrs]), radicand clamped at 0
  OverlapEstimate overlap;
  OverlapEstimate cycle;
  double cycle_imag_mean = 0.0;
  double cycle_imag_std_error = 0.0;
  double ci = 0.0;                // one standard error
  double first_term_bound = 0.0;  // Tr rs alone
  bool at_boundary = false;       // radicand within three standard errors of 0
};

// Each of the two estimators gets shots_per_quantity shots.
SubFidelityEstimate estimate_subfidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         std::uint64_t shots_per_quantity, std::uint64_t seed,
                                         const DenseLimits& limits = {});

}  // namespace qem

#endif  // QEM_SUBFID_HPP_
