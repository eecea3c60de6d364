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

#ifndef QEM_DISTANCE_HPP_
#define QEM_DISTANCE_HPP_

#include <string_view>

#include "qem/state.hpp"

namespace qem {

enum class Measure { kTraceDistance, kFidelity, kSubFidelity, kRelativeEntropy };

std::string_view measure_name(Measure m);

struct DistanceValue {
  double value;
  Measure measure;
};

// Half the sum of |eigenvalues| of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
// Same, for raw Hermitian matrices (no state validation).
double trace_distance(const Matrix& rho, const Matrix& sigma);

// (Tr sqrt(sigma^1/2 rho sigma^1/2))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tr(rho sigma) + sqrt(2[(Tr rho sigma)^2 - Tr(rho sigma rho sigma)]).
// Throws NegativeRadicand when the radicand is below -kRadicandTol.
double sub_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

// Assembles the sub-fidelity from its two trace functionals; shared by the
// exact and the shot-estimated paths.
double sub_fidelity_from_traces(double tr_rs, double tr_rsrs);

// S(rho||sigma) in bits. Returns +infinity when rho has weight outside the
// support of sigma.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

DistanceValue measure(Measure m, const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace qem

#endif  // QEM_DISTANCE_HPP_
