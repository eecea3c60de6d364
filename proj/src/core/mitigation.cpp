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

#include "qem/mitigation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "qem/errors.hpp"
#include "qem/random.hpp"
#include "qem/tolerances.hpp"

namespace qem {

Povm Povm::from_elements(std::vector<Matrix> elements) {
  if (elements.empty()) fail(ErrorCode::kInvalidArgument, "POVM needs elements");
  const auto d = static_cast<std::size_t>(elements.front().rows());
  Matrix sum = Matrix::Zero(d, d);
  for (auto& m : elements) {
    if (static_cast<std::size_t>(m.rows()) != d || static_cast<std::size_t>(m.cols()) != d) {
      fail(ErrorCode::kDimensionMismatch, "POVM elements differ in shape");
    }
    if (hermiticity_error(m) > kStructuralTol) {
      fail(ErrorCode::kNotHermitian, "POVM element is not Hermitian");
    }
    m = hermitize(m);
    if (hermitian_eigenvalues(m).minCoeff() < -kStructuralTol) {
      fail(ErrorCode::kNotPositive, "POVM element is not PSD");
    }
    sum += m;
  }
  if (max_abs(sum - Matrix::Identity(d, d)) > kStructuralTol) {
    fail(ErrorCode::kNotTracePreserving, "POVM elements do not sum to identity");
  }
  return Povm(d, std::move(elements));
}

std::vector<double> Povm::probabilities(const Matrix& rho) const {
  if (static_cast<std::size_t>(rho.rows()) != dim_) {
    fail(ErrorCode::kDimensionMismatch, "state does not match POVM dimension");
  }
  std::vector<double> p;
  p.reserve(elements_.size());
  double total = 0.0;
  for (const auto& m : elements_) {
    const double v = trace_product(m, rho).real();
    if (v < -kStructuralTol) fail(ErrorCode::kNotPositive, "negative Born probability");
    p.push_back(std::max(v, 0.0));
    total += p.back();
  }
  for (auto& v : p) v /= total;
  return p;
}

EigenMeasurement eigenbasis_measurement(const Observable& a) {
  const HermitianEigen eig = hermitian_eigen(a.matrix());
  EigenMeasurement out;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    const Vector v = eig.vectors.col(i);
    out.projectors.push_back(v * v.adjoint());
    out.values.push_back(eig.values(i));
  }
  return out;
}

void MitigationProtocolSpec::validate() const {
  shape.validate();
  if (povms.size() != shape.experiments) {
    fail(ErrorCode::kInvalidArgument, "need one POVM per experiment");
  }
  const double copy_dim = std::pow(static_cast<double>(shape.single_copy_dim()),
                                   static_cast<double>(shape.inputs));
  std::size_t table = 1;
  for (const auto& p : povms) {
    if (static_cast<double>(p.dim()) != copy_dim) {
      fail(ErrorCode::kDimensionMismatch, "POVM must act on Q copies");
    }
    table *= p.size();
  }
  if (estimator.size() != table) {
    fail(ErrorCode::kInvalidArgument, "estimator table does not cover the outcome space");
  }
  for (double e : estimator) {
    if (!std::isfinite(e)) fail(ErrorCode::kInvalidArgument, "estimator value is not finite");
  }
}

std::vector<std::size_t> MitigationProtocolSpec::outcome_counts() const {
  std::vector<std::size_t> counts;
  for (const auto& p : povms) counts.push_back(p.size());
  return counts;
}

std::size_t MitigationProtocolSpec::flat_index(std::span<const std::size_t> outcomes) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < povms.size(); ++k) idx = idx * povms[k].size() + outcomes[k];
  return idx;
}

double MitigationProtocolSpec::spread() const {
  const auto [lo, hi] = std::minmax_element(estimator.begin(), estimator.end());
  return *hi - *lo;
}

std::vector<std::vector<double>> outcome_distributions(const MitigationProtocolSpec& spec,
                                                       const DensityMatrix& psi) {
  spec.validate();
  if (psi.dim() != spec.shape.single_copy_dim()) {
    fail(ErrorCode::kDimensionMismatch, "ideal state does not match protocol dimension");
  }
  std::vector<std::vector<double>> dists;
  for (std::size_t k = 0; k < spec.shape.experiments; ++k) {
    Matrix joint = Matrix::Identity(1, 1);
    for (const auto& ch : spec.shape.channels[k]) joint = kron(joint, ch.apply(psi.matrix()));
    dists.push_back(spec.povms[k].probabilities(joint));
  }
  return dists;
}

double exact_expectation(const MitigationProtocolSpec& spec, const DensityMatrix& psi) {
  const auto dists = outcome_distributions(spec, psi);
  const std::size_t k_count = dists.size();
  std::vector<std::size_t> outcome(k_count, 0);
  double total = 0.0;
  for (std::size_t flat = 0; flat < spec.estimator.size(); ++flat) {
    double p = 1.0;
    for (std::size_t k = 0; k < k_count; ++k) p *= dists[k][outcome[k]];
    total += p * spec.estimator[flat];
    for (std::size_t k = k_count; k-- > 0;) {
      if (++outcome[k] < dists[k].size()) break;
      outcome[k] = 0;
    }
  }
  return total;
}

MitigationRun run_mitigation(const MitigationProtocolSpec& spec, const DensityMatrix& psi,
                             std::uint64_t rounds, std::uint64_t seed) {
  if (rounds < 1) fail(ErrorCode::kInvalidArgument, "need at least one round");
  const auto dists = outcome_distributions(spec, psi);
  std::vector<std::vector<double>> cdfs;
  for (const auto& d : dists) {
    std::vector<double> c(d.size());
    std::partial_sum(d.begin(), d.end(), c.begin());
    c.back() = 1.0;
    cdfs.push_back(std::move(c));
  }

  MitigationRun run;
  run.rounds = rounds;
  run.seed = seed;
  run.min_observed = std::numeric_limits<double>::infinity();
  run.max_observed = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> outcome(dists.size());
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t m = 0; m < rounds; ++m) {
    std::mt19937_64 gen = substream(seed, m);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (std::size_t k = 0; k < cdfs.size(); ++k) {
      const double u = uniform(gen);
      const auto it = std::upper_bound(cdfs[k].begin(), cdfs[k].end(), u);
      outcome[k] = std::min<std::size_t>(static_cast<std::size_t>(it - cdfs[k].begin()),
                                         cdfs[k].size() - 1);
    }
    const double e = spec.estimator[spec.flat_index(outcome)];
    run.min_observed = std::min(run.min_observed, e);
    run.max_observed = std::max(run.max_observed, e);
    // Welford
    const double delta = e - mean;
    mean += delta / static_cast<double>(m + 1);
    m2 += delta * (e - mean);
  }
  run.mean = mean;
  run.std_dev = rounds > 1 ? std::sqrt(m2 / static_cast<double>(rounds - 1)) : 0.0;
  run.empirical_spread = run.max_observed - run.min_observed;
  return run;
}

std::uint64_t hoeffding_samples(double spread, const AccuracySpec& acc) {
  if (!(spread > 0.0) || !std::isfinite(spread)) {
    fail(ErrorCode::kInvalidSpread, "estimator spread must be positive and finite");
  }
  return hoeffding_round_count(spread, acc);
}

}  // namespace qem
