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

#ifndef QEM_TOLERANCES_HPP_
#define QEM_TOLERANCES_HPP_

#include <cstddef>

namespace qem {

// Structural checks: hermiticity, unit trace, PSD, CPTP, unitarity.
inline constexpr double kStructuralTol = 1e-9;
// Kraus operators (and Choi eigenvalues) below this are dropped.
inline constexpr double kPruneTol = 1e-12;
// Squared-root arguments of fidelity may carry this much negative noise.
inline constexpr double kSqrtClipTol = 1e-10;
// Eigenvalues of unit-trace PSD operators below this are rounding noise;
// square roots treat them as zero.
inline constexpr double kEigenNoiseTol = 1e-14;
// Clamp band for the sub-fidelity radicand.
inline constexpr double kRadicandTol = 1e-12;
// Eigenvalues of rho below this contribute nothing to Tr(rho log rho).
inline constexpr double kEntropyZeroTol = 1e-15;
// Eigenvalues of sigma below this count as outside its support.
inline constexpr double kSupportTol = 1e-12;

// Largest joint Hilbert-space dimension any routine will form densely.
inline constexpr std::size_t kDefaultMaxDenseDim = std::size_t{1} << 14;

struct DenseLimits {
  std::size_t max_dim = kDefaultMaxDenseDim;
};

}  // namespace qem

#endif  // QEM_TOLERANCES_HPP_
