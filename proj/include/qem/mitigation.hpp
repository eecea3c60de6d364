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

#ifndef QEM_MITIGATION_HPP_
#define QEM_MITIGATION_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qem/bounds.hpp"
#include "qem/linalg.hpp"
#include "qem/state.hpp"

namespace qem {

class Povm {
 public:
  // Each element PSD within kStructuralTol and sum = I. Throws NotPositive,
  // NotTracePreserving (completeness), DimensionMismatch.
  static Povm from_elements(std::vector<Matrix> elements);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<Matrix>& elements() const { return elements_; }

  // Born probabilities Tr(M_i rho), clipped at zero and renormalized.
  std::vector<double> probabilities(const Matrix& rho) const;

 private:
  Povm(std::size_t dim, std::vector<Matrix> elements)
      : dim_(dim), elements_(std::move(elements)) {}
  std::size_t dim_;
  std::vector<Matrix> elements_;
};

// Rank-1 projectors onto a fixed eigenbasis of A, with their eigenvalues.
struct EigenMeasurement {
  std::vector<Matrix> projectors;
  std::vector<double> values;
};
EigenMeasurement eigenbasis_measurement(const Observable& a);

// A (Q, K) protocol: K POVMs (the k-th on Q copies) and an estimator table
// over the full outcome product space.
struct MitigationProtocolSpec {
  std::string protocol;
  ProtocolShape shape;
  std::vector<Povm> povms;
  // Flat estimator table; experiment 0 is the most significant digit.
  std::vector<double> estimator;
  // Free-form note on how shape.max_bias was obtained.
  std::string bias_description;

  void validate() const;
  std::vector<std::size_t> outcome_counts() const;
  std::size_t flat_index(std::span<const std::size_t> outcomes) const;
  // e_max - e_min over the table.
  double spread() const;
};

// Per-experiment exact outcome distributions for ideal output psi.
std::vector<std::vector<double>> outcome_distributions(const MitigationProtocolSpec& spec,
                                                       const DensityMatrix& psi);

// sum_i p_i e(i), enumerating every outcome tuple.
double exact_expectation(const MitigationProtocolSpec& spec, const DensityMatrix& psi);

struct MitigationRun {
  double mean = 0.0;
  double std_dev = 0.0;
  double min_observed = 0.0;
  double max_observed = 0.0;
  double empirical_spread = 0.0;
  std::uint64_t rounds = 0;
  std::uint64_t seed = 0;
};

// Monte Carlo execution of the round loop: each round samples one outcome
// per experiment from the exact Born distribution and applies the
// estimator. Round m draws from substream (seed, m).
MitigationRun run_mitigation(const MitigationProtocolSpec& spec, const DensityMatrix& psi,
                             std::uint64_t rounds, std::uint64_t seed);

// Rounds needed for accuracy delta with failure probability eps given an
// estimator range. Throws InvalidSpread for non-positive spread.
std::uint64_t hoeffding_samples(double spread, const AccuracySpec& acc);

}  // namespace qem

#endif  // QEM_MITIGATION_HPP_
