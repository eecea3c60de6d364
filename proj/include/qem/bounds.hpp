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

#ifndef QEM_BOUNDS_HPP_
#define QEM_BOUNDS_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qem/channel.hpp"
#include "qem/circuit.hpp"
#include "qem/state.hpp"
#include "qem/tolerances.hpp"

namespace qem {

// The (Q, K) structure of a mitigation protocol: K experiments per round,
// each jointly measuring Q noisy copies. channels[k][q] is the effective
// noise channel of input q in experiment k.
struct ProtocolShape {
  std::size_t inputs = 1;       // Q
  std::size_t experiments = 1;  // K
  std::size_t qubits = 1;       // n
  double max_bias = 0.0;        // b_max
  std::vector<std::vector<QuantumChannel>> channels;

  // Same channel for every (k, q).
  static ProtocolShape uniform(const QuantumChannel& ch, std::size_t inputs,
                               std::size_t experiments, double max_bias);

  // Throws InvalidArgument (b_max outside [0, 1/2], grid shape) and
  // DimensionMismatch.
  void validate() const;
  std::size_t single_copy_dim() const;
  // Dimension of the QK-copy product; saturates instead of overflowing.
  std::size_t product_dim() const;
};

enum class Relaxation {
  kExactK1,        // K = 1: local distinguishability equals trace distance
  kTraceProduct,   // trace distance of the QK-copy products
  kFidelity,       // sqrt(1 - prod F)
  kSubFidelity,    // sqrt(1 - prod E)
  kLayeredAnalytic,
};

std::string_view relaxation_name(Relaxation r);
Relaxation parse_relaxation(std::string_view name);

enum class BoundStatus { kFinite, kInfinite, kVacuous };
std::string_view bound_status_name(BoundStatus s);

struct BoundReport {
  double numerator = 0.0;    // D_tr(psi, phi) - 2 b_max
  double denominator = 0.0;
  Relaxation relaxation = Relaxation::kTraceProduct;
  double bound_value = 0.0;  // certified lower bound on the maximum spread
  BoundStatus status = BoundStatus::kVacuous;
  std::string pair_description;
  std::size_t inputs = 1;
  std::size_t experiments = 1;
  std::size_t qubits = 1;
  double max_bias = 0.0;
};

// Fills bound_value and status from numerator and denominator.
void finalize_bound(BoundReport& report);

struct AccuracySpec {
  double delta = 0.05;         // additive accuracy
  double failure_prob = 0.05;  // epsilon in (0, 1)
  void validate() const;
};

// ceil(2 spread^2 ln(2/eps) / delta^2), with a 1e-9 relative slack so that
// exact integers are not bumped up by rounding noise.
std::uint64_t hoeffding_round_count(double spread, const AccuracySpec& acc);

// Lower bound on the maximum spread from one witness pair (psi, phi).
BoundReport spread_bound_from_pair(const ProtocolShape& shape, const DensityMatrix& psi,
                                   const DensityMatrix& phi, Relaxation relaxation,
                                   std::string_view pair_description = "custom",
                                   const DenseLimits& limits = {});

// Fidelity-type bound from an externally measured overlap product (for
// example a shot-based sub-fidelity estimate raised to the power QK).
BoundReport spread_bound_from_overlap(const ProtocolShape& shape, double ideal_trace_distance,
                                      double overlap_product, Relaxation relaxation,
                                      std::string_view pair_description = "measured");

// Delta-method standard error of the overlap bound when the per-copy overlap
// carries standard error overlap_std_error (product = overlap^(QK)).
double overlap_bound_std_error(const ProtocolShape& shape, double ideal_trace_distance,
                               double per_copy_overlap, double overlap_std_error);

// Number of rounds implied by a spread lower bound. Throws VacuousBound when
// bound_value <= 0 and InvalidArgument when it is infinite.
std::uint64_t sample_count_bound(const BoundReport& report, const AccuracySpec& acc);

// Closed-form layered-circuit bound under local depolarizing noise:
// (1 - 2 b) / (sqrt(2 ln 2) sqrt(nQ) K) * (1 - eps_min)^(-L/2).
double layered_depolarizing_bound(std::size_t qubits, std::size_t inputs, std::size_t experiments,
                              double max_bias, const std::vector<double>& rates,
                              std::size_t depth);
BoundReport layered_depolarizing_report(std::size_t qubits, std::size_t inputs,
                                    std::size_t experiments, double max_bias,
                                    const std::vector<double>& rates, std::size_t depth);

struct StatePair {
  DensityMatrix psi;
  DensityMatrix phi;
  std::string description;
};

// Orthogonal witness pairs in the computational, Hadamard and Y bases.
std::vector<StatePair> preset_pairs(std::size_t dim);

struct PairSearch {
  enum class Mode { kPresets, kRandom };
  Mode mode = Mode::kPresets;
  std::size_t samples = 64;
  std::uint64_t seed = 0;
};

// Best bound over the candidate set. Ties go to the lowest candidate index.
// The result is a certified lower bound, not the global maximum.
BoundReport optimize_bound_over_pairs(const ProtocolShape& shape, Relaxation relaxation,
                                      const PairSearch& search, const DenseLimits& limits = {});

struct EntropyEnvelope {
  double lhs;  // S(noisy Q-copy output || I / 2^(Qn)), bits
  double rhs;  // (1 - eps_k)^L Q n
};

// Relative-entropy decay of Q copies of the layered circuit, simulated on
// Qn qubits directly. Throws ProductTooLarge.
EntropyEnvelope entropy_decay_envelope(const LayeredCircuitConfig& cfg, std::size_t inputs,
                                       const DensityMatrix& psi_in, std::size_t experiment = 0,
                                       const DenseLimits& limits = {});

// Every quantity in the layered-circuit proof chain, each bounded by the
// next: trace_product <= split_to_mixed <= per_experiment_sum <= pinsker_sum
// <= envelope_sum <= analytic_denominator.
struct LayeredProofChain {
  double trace_product = 0.0;
  double split_to_mixed = 0.0;
  double per_experiment_sum = 0.0;
  double pinsker_sum = 0.0;
  double envelope_sum = 0.0;
  double analytic_denominator = 0.0;
  std::vector<EntropyEnvelope> entropies;  // psi then phi, per experiment

  // Largest violation of any link (<= 0 when the chain holds).
  double worst_violation() const;
};

LayeredProofChain layered_proof_chain(const LayeredCircuitConfig& cfg, std::size_t inputs,
                             const DensityMatrix& psi_in, const DensityMatrix& phi_in,
                             const DenseLimits& limits = {});

}  // namespace qem

#endif  // QEM_BOUNDS_HPP_
