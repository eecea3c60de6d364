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

#include "qem/distance.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qem/errors.hpp"
#include "qem/tolerances.hpp"

namespace qem {

namespace {

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    fail(ErrorCode::kDimensionMismatch,
         "state dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::kTraceDistance: return "trace_distance";
    case Measure::kFidelity: return "fidelity";
    case Measure::kSubFidelity: return "sub_fidelity";
    case Measure::kRelativeEntropy: return "relative_entropy";
  }
  return "unknown";
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  require_same_dim(static_cast<std::size_t>(rho.rows()), static_cast<std::size_t>(sigma.rows()));
  return 0.5 * hermitian_eigenvalues(rho - sigma).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

namespace {

// Spectrum of sigma^{1/2} rho sigma^{1/2} with rounding noise set to zero.
RealVector sandwiched_spectrum(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim());
  const Matrix root = psd_sqrt(sigma.matrix());
  RealVector ev = hermitian_eigenvalues(root * rho.matrix() * root);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= kEigenNoiseTol) ev(i) = 0.0;
  }
  return ev;
}

}  // namespace

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const RealVector ev = sandwiched_spectrum(rho, sigma);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) tr += std::sqrt(ev(i));
  return std::min(tr * tr, 1.0 + kStructuralTol);
}

double sub_fidelity_from_traces(double tr_rs, double tr_rsrs) {
  double radicand = 2.0 * (tr_rs * tr_rs - tr_rsrs);
  if (radicand < -kRadicandTol) {
    fail(ErrorCode::kNegativeRadicand,
         "sub-fidelity radicand " + std::to_string(radicand) + " is negative");
  }
  radicand = std::max(radicand, 0.0);
  return tr_rs + std::sqrt(radicand);
}

double sub_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  // With mu the spectrum of sigma^{1/2} rho sigma^{1/2}: Tr(rho sigma) = sum mu
  // and Tr(rho sigma rho sigma) = sum mu^2, so the radicand is
  // 4 sum_{i<j} mu_i mu_j, free of cancellation.
  const RealVector mu = sandwiched_spectrum(rho, sigma);
  double tr_rs = 0.0, pairs = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    pairs += mu(i) * tr_rs;
    tr_rs += mu(i);
  }
  return std::min(tr_rs + std::sqrt(4.0 * pairs), 1.0 + kStructuralTol);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim());
  const RealVector p = hermitian_eigenvalues(rho.matrix());
  double neg_entropy = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > kEntropyZeroTol) neg_entropy += p(i) * std::log2(p(i));
  }
  const HermitianEigen s = hermitian_eigen(sigma.matrix());
  double cross = 0.0;
  for (Eigen::Index j = 0; j < s.values.size(); ++j) {
    const Vector v = s.vectors.col(j);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    if (weight <= kEntropyZeroTol) continue;
    if (s.values(j) < kSupportTol) {
      if (weight > kSupportTol) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(s.values(j));
  }
  return neg_entropy - cross;
}

DistanceValue measure(Measure m, const DensityMatrix& rho, const DensityMatrix& sigma) {
  switch (m) {
    case Measure::kTraceDistance: return {trace_distance(rho, sigma), m};
    case Measure::kFidelity: return {fidelity(rho, sigma), m};
    case Measure::kSubFidelity: return {sub_fidelity(rho, sigma), m};
    case Measure::kRelativeEntropy: return {relative_entropy(rho, sigma), m};
  }
  fail(ErrorCode::kInvalidArgument, "unknown measure");
}

}  // namespace qem
