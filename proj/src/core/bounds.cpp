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

#include "qem/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qem/distance.hpp"
#include "qem/errors.hpp"
#include "qem/random.hpp"

namespace qem {

namespace {

constexpr double kZeroDenominator = 1e-15;

double product_dim_checked(std::size_t base, std::size_t copies, const DenseLimits& limits) {
  double d = 1.0;
  for (std::size_t i = 0; i < copies; ++i) d *= static_cast<double>(base);
  if (d > static_cast<double>(limits.max_dim)) {
    fail(ErrorCode::kProductTooLarge,
         "joint dimension " + std::to_string(d) + " exceeds dense limit " +
             std::to_string(limits.max_dim));
  }
  return d;
}

// Tensor product over the (k, q) grid of ch_kq(rho).
Matrix product_output(const ProtocolShape& shape, const DensityMatrix& rho) {
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& row : shape.channels) {
    for (const auto& ch : row) out = kron(out, ch.apply(rho.matrix()));
  }
  return out;
}

double sqrt_one_minus(double overlap_product) {
  return std::sqrt(std::max(0.0, 1.0 - overlap_product));
}

}  // namespace

ProtocolShape ProtocolShape::uniform(const QuantumChannel& ch, std::size_t inputs,
                                     std::size_t experiments, double max_bias) {
  ProtocolShape s;
  s.inputs = inputs;
  s.experiments = experiments;
  s.max_bias = max_bias;
  s.qubits = is_power_of_two(ch.dim_out()) ? qubit_count(ch.dim_out()) : 0;
  s.channels.assign(experiments, std::vector<QuantumChannel>(inputs, ch));
  s.validate();
  return s;
}

void ProtocolShape::validate() const {
  if (inputs < 1 || experiments < 1) fail(ErrorCode::kInvalidArgument, "Q and K must be >= 1");
  if (!(max_bias >= 0.0 && max_bias <= 0.5)) {
    fail(ErrorCode::kInvalidArgument, "b_max must lie in [0, 1/2]");
  }
  if (channels.size() != experiments) {
    fail(ErrorCode::kInvalidArgument, "channel grid must have K rows");
  }
  const std::size_t d = channels.front().empty() ? 0 : channels.front().front().dim_in();
  for (const auto& row : channels) {
    if (row.size() != inputs) fail(ErrorCode::kInvalidArgument, "channel grid must have Q columns");
    for (const auto& ch : row) {
      if (ch.dim_in() != d || ch.dim_out() != d) {
        fail(ErrorCode::kDimensionMismatch, "all channels must act on one dimension");
      }
    }
  }
  if (qubits > 0 && (std::size_t{1} << qubits) != d) {
    fail(ErrorCode::kDimensionMismatch, "channels do not act on 2^n dimensions");
  }
}

std::size_t ProtocolShape::single_copy_dim() const { return channels.front().front().dim_in(); }

std::size_t ProtocolShape::product_dim() const {
  std::size_t d = 1;
  const std::size_t base = single_copy_dim();
  for (std::size_t i = 0; i < inputs * experiments; ++i) {
    if (d > std::numeric_limits<std::size_t>::max() / base) {
      return std::numeric_limits<std::size_t>::max();
    }
    d *= base;
  }
  return d;
}

std::string_view relaxation_name(Relaxation r) {
  switch (r) {
    case Relaxation::kExactK1: return "exact_K1";
    case Relaxation::kTraceProduct: return "trace_product";
    case Relaxation::kFidelity: return "fidelity";
    case Relaxation::kSubFidelity: return "sub_fidelity";
    case Relaxation::kLayeredAnalytic: return "layered_analytic";
  }
  return "unknown";
}

Relaxation parse_relaxation(std::string_view name) {
  if (name == "exact_K1" || name == "exact") return Relaxation::kExactK1;
  if (name == "trace_product" || name == "trace") return Relaxation::kTraceProduct;
  if (name == "fidelity") return Relaxation::kFidelity;
  if (name == "sub_fidelity") return Relaxation::kSubFidelity;
  if (name == "layered_analytic") return Relaxation::kLayeredAnalytic;
  fail(ErrorCode::kParseError, "unknown relaxation '" + std::string(name) + "'");
}

std::string_view bound_status_name(BoundStatus s) {
  switch (s) {
    case BoundStatus::kFinite: return "finite";
    case BoundStatus::kInfinite: return "infinite";
    case BoundStatus::kVacuous: return "vacuous";
  }
  return "unknown";
}

void finalize_bound(BoundReport& report) {
  if (report.numerator <= 0.0) {
    report.status = BoundStatus::kVacuous;
    report.bound_value = 0.0;
  } else if (report.denominator <= kZeroDenominator) {
    report.status = BoundStatus::kInfinite;
    report.bound_value = std::numeric_limits<double>::infinity();
  } else {
    report.status = BoundStatus::kFinite;
    report.bound_value = report.numerator / report.denominator;
  }
}

void AccuracySpec::validate() const {
  if (!(delta > 0.0)) fail(ErrorCode::kInvalidArgument, "accuracy delta must be positive");
  if (!(failure_prob > 0.0 && failure_prob < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "failure probability must lie in (0, 1)");
  }
}

std::uint64_t hoeffding_round_count(double spread, const AccuracySpec& acc) {
  acc.validate();
  const double m =
      2.0 * spread * spread * std::log(2.0 / acc.failure_prob) / (acc.delta * acc.delta);
  return static_cast<std::uint64_t>(std::ceil(m - 1e-9 * std::max(1.0, m)));
}

BoundReport spread_bound_from_pair(const ProtocolShape& shape, const DensityMatrix& psi,
                                   const DensityMatrix& phi, Relaxation relaxation,
                                   std::string_view pair_description,
                                   const DenseLimits& limits) {
  shape.validate();
  if (psi.dim() != shape.single_copy_dim() || phi.dim() != shape.single_copy_dim()) {
    fail(ErrorCode::kDimensionMismatch, "witness states do not match channel dimension");
  }
  BoundReport r;
  r.relaxation = relaxation;
  r.pair_description = std::string(pair_description);
  r.inputs = shape.inputs;
  r.experiments = shape.experiments;
  r.qubits = shape.qubits;
  r.max_bias = shape.max_bias;
  r.numerator = trace_distance(psi, phi) - 2.0 * shape.max_bias;

  switch (relaxation) {
    case Relaxation::kExactK1:
      if (shape.experiments != 1) {
        fail(ErrorCode::kInvalidArgument, "exact_K1 relaxation requires K = 1");
      }
      [[fallthrough]];
    case Relaxation::kTraceProduct: {
      product_dim_checked(shape.single_copy_dim(), shape.inputs * shape.experiments, limits);
      r.denominator = trace_distance(product_output(shape, psi), product_output(shape, phi));
      break;
    }
    case Relaxation::kFidelity:
    case Relaxation::kSubFidelity: {
      double overlap = 1.0;
      for (const auto& row : shape.channels) {
        for (const auto& ch : row) {
          const DensityMatrix a = ch.apply(psi);
          const DensityMatrix b = ch.apply(phi);
          overlap *= relaxation == Relaxation::kFidelity ? fidelity(a, b) : sub_fidelity(a, b);
        }
      }
      r.denominator = sqrt_one_minus(overlap);
      break;
    }
    case Relaxation::kLayeredAnalytic:
      fail(ErrorCode::kInvalidArgument,
           "layered_analytic does not use witness states; call layered_depolarizing_report");
  }
  finalize_bound(r);
  return r;
}

BoundReport spread_bound_from_overlap(const ProtocolShape& shape, double ideal_trace_distance,
                                      double overlap_product, Relaxation relaxation,
                                      std::string_view pair_description) {
  shape.validate();
  if (relaxation != Relaxation::kFidelity && relaxation != Relaxation::kSubFidelity) {
    fail(ErrorCode::kInvalidArgument, "overlap bounds use the fidelity or sub_fidelity relaxation");
  }
  if (!std::isfinite(overlap_product)) fail(ErrorCode::kInvalidArgument, "overlap is not finite");
  BoundReport r;
  r.relaxation = relaxation;
  r.pair_description = std::string(pair_description);
  r.inputs = shape.inputs;
  r.experiments = shape.experiments;
  r.qubits = shape.qubits;
  r.max_bias = shape.max_bias;
  r.numerator = ideal_trace_distance - 2.0 * shape.max_bias;
  r.denominator = sqrt_one_minus(overlap_product);
  finalize_bound(r);
  return r;
}

double overlap_bound_std_error(const ProtocolShape& shape, double ideal_trace_distance,
                               double per_copy_overlap, double overlap_std_error) {
  const double copies = static_cast<double>(shape.inputs * shape.experiments);
  const double numerator = ideal_trace_distance - 2.0 * shape.max_bias;
  if (numerator <= 0.0) return 0.0;
  const double e = std::clamp(per_copy_overlap, 0.0, 1.0);
  const double gap = 1.0 - std::pow(e, copies);
  if (gap <= kZeroDenominator) return std::numeric_limits<double>::infinity();
  const double slope = numerator * copies * std::pow(e, copies - 1.0) / (2.0 * std::pow(gap, 1.5));
  return slope * overlap_std_error;
}

std::uint64_t sample_count_bound(const BoundReport& report, const AccuracySpec& acc) {
  if (!(report.bound_value > 0.0)) {
    fail(ErrorCode::kVacuousBound, "bound is vacuous; no sample-count implication");
  }
  if (std::isinf(report.bound_value)) {
    fail(ErrorCode::kInvalidArgument, "bound is infinite; sample count is unbounded");
  }
  return hoeffding_round_count(report.bound_value, acc);
}

BoundReport layered_depolarizing_report(std::size_t qubits, std::size_t inputs,
                                    std::size_t experiments, double max_bias,
                                    const std::vector<double>& rates, std::size_t depth) {
  if (qubits < 1 || inputs < 1 || experiments < 1) {
    fail(ErrorCode::kInvalidArgument, "n, Q and K must be >= 1");
  }
  if (!(max_bias >= 0.0 && max_bias <= 0.5)) {
    fail(ErrorCode::kInvalidArgument, "b_max must lie in [0, 1/2]");
  }
  if (rates.size() != experiments) {
    fail(ErrorCode::kInvalidArgument, "need one noise rate per experiment");
  }
  for (double e : rates) {
    if (!(e > 0.0 && e < 1.0)) {
      fail(ErrorCode::kInvalidRate, "noise rate " + std::to_string(e) + " outside (0,1)");
    }
  }
  const double eps_min = *std::min_element(rates.begin(), rates.end());
  BoundReport r;
  r.relaxation = Relaxation::kLayeredAnalytic;
  r.pair_description = "analytic";
  r.inputs = inputs;
  r.experiments = experiments;
  r.qubits = qubits;
  r.max_bias = max_bias;
  r.numerator = 1.0 - 2.0 * max_bias;
  r.denominator = std::sqrt(2.0 * std::numbers::ln2) *
                  std::sqrt(static_cast<double>(qubits * inputs)) *
                  static_cast<double>(experiments) *
                  std::pow(1.0 - eps_min, static_cast<double>(depth) / 2.0);
  finalize_bound(r);
  return r;
}

double layered_depolarizing_bound(std::size_t qubits, std::size_t inputs, std::size_t experiments,
                              double max_bias, const std::vector<double>& rates,
                              std::size_t depth) {
  return layered_depolarizing_report(qubits, inputs, experiments, max_bias, rates, depth)
      .bound_value;
}

std::vector<StatePair> preset_pairs(std::size_t dim) {
  if (dim < 2) fail(ErrorCode::kInvalidDimension, "witness pairs need dim >= 2");
  std::vector<StatePair> pairs;
  if (is_power_of_two(dim)) {
    const std::size_t n = qubit_count(dim);
    const std::pair<const char*, const char*> bases[] = {
        {"plus", "minus"}, {"zero", "one"}, {"plusi", "minusi"}};
    for (const auto& [a, b] : bases) {
      pairs.push_back({DensityMatrix::pure(named_ket(a, n)), DensityMatrix::pure(named_ket(b, n)),
                       std::string(a) + "^" + std::to_string(n) + " vs " + b + "^" +
                           std::to_string(n)});
    }
    if (n > 1) {
      for (const auto& [a, b] : bases) {
        const Vector last_flipped = kron(named_ket(a, n - 1), named_ket(b, 1)).col(0);
        pairs.push_back({DensityMatrix::pure(named_ket(a, n)), DensityMatrix::pure(last_flipped),
                         std::string(a) + "^" + std::to_string(n) + " vs " + a + "^" +
                             std::to_string(n - 1) + " " + b});
      }
    }
    return pairs;
  }
  const double h = 1.0 / std::sqrt(2.0);
  Vector e0 = Vector::Zero(dim), e1 = Vector::Zero(dim);
  e0(0) = 1.0;
  e1(1) = 1.0;
  pairs.push_back({DensityMatrix::pure(h * (e0 + e1)), DensityMatrix::pure(h * (e0 - e1)),
                   "(|0>+|1>) vs (|0>-|1>)"});
  pairs.push_back({DensityMatrix::pure(e0), DensityMatrix::pure(e1), "|0> vs |1>"});
  pairs.push_back({DensityMatrix::pure(h * (e0 + Complex(0, 1) * e1)),
                   DensityMatrix::pure(h * (e0 - Complex(0, 1) * e1)),
                   "(|0>+i|1>) vs (|0>-i|1>)"});
  return pairs;
}

BoundReport optimize_bound_over_pairs(const ProtocolShape& shape, Relaxation relaxation,
                                      const PairSearch& search, const DenseLimits& limits) {
  shape.validate();
  const std::size_t dim = shape.single_copy_dim();
  std::vector<StatePair> candidates;
  if (search.mode == PairSearch::Mode::kPresets) {
    candidates = preset_pairs(dim);
  } else {
    if (search.samples < 1) fail(ErrorCode::kInvalidArgument, "search budget must be >= 1");
    candidates.reserve(search.samples);
    for (std::size_t i = 0; i < search.samples; ++i) {
      const std::uint64_t s = mix_seed(search.seed ^ mix_seed(i));
      candidates.push_back({haar_random_state(dim, s), haar_random_state(dim, mix_seed(s)),
                            "haar pair #" + std::to_string(i) + " (seed " +
                                std::to_string(search.seed) + ")"});
    }
  }
  BoundReport best;
  bool have_best = false;
  for (const auto& c : candidates) {
    BoundReport r = spread_bound_from_pair(shape, c.psi, c.phi, relaxation, c.description, limits);
    if (!have_best || r.bound_value > best.bound_value) {
      best = std::move(r);
      have_best = true;
    }
  }
  return best;
}

EntropyEnvelope entropy_decay_envelope(const LayeredCircuitConfig& cfg, std::size_t inputs,
                                       const DensityMatrix& psi_in, std::size_t experiment,
                                       const DenseLimits& limits) {
  cfg.validate();
  if (inputs < 1) fail(ErrorCode::kInvalidArgument, "Q must be >= 1");
  if (experiment >= cfg.experiment_rates.size()) {
    fail(ErrorCode::kInvalidArgument, "experiment index out of range");
  }
  if (psi_in.dim() != cfg.dim()) {
    fail(ErrorCode::kDimensionMismatch, "input state does not match circuit width");
  }
  product_dim_checked(cfg.dim(), inputs, limits);

  // Q copies side by side: layers U^(x)Q, noise on all Qn qubits.
  LayeredCircuitConfig copies{.qubits = cfg.qubits * inputs,
                              .layers = {},
                              .experiment_rates = {cfg.experiment_rates[experiment]}};
  for (const auto& layer : cfg.layers) copies.layers.push_back(kron_power(layer, inputs));
  const DensityMatrix out = simulate_noisy_circuit(copies, 0, psi_in.tensor_power(inputs));

  const double qn = static_cast<double>(cfg.qubits * inputs);
  return {relative_entropy(out, DensityMatrix::maximally_mixed(copies.dim())),
          std::pow(1.0 - cfg.experiment_rates[experiment], static_cast<double>(cfg.depth())) *
              qn};
}

double LayeredProofChain::worst_violation() const {
  const double links[][2] = {{trace_product, split_to_mixed},
                             {split_to_mixed, per_experiment_sum},
                             {per_experiment_sum, pinsker_sum},
                             {pinsker_sum, envelope_sum},
                             {envelope_sum, analytic_denominator}};
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& l : links) worst = std::max(worst, l[0] - l[1]);
  for (const auto& e : entropies) worst = std::max(worst, e.lhs - e.rhs);
  return worst;
}

LayeredProofChain layered_proof_chain(const LayeredCircuitConfig& cfg, std::size_t inputs,
                             const DensityMatrix& psi_in, const DensityMatrix& phi_in,
                             const DenseLimits& limits) {
  cfg.validate();
  const std::size_t experiments = cfg.experiment_rates.size();
  product_dim_checked(cfg.dim(), inputs * experiments, limits);

  // Denominator of the trace-distance bound, through the effective channels
  // acting on the ideal outputs.
  const Matrix u = ideal_unitary(cfg);
  const DensityMatrix psi = DensityMatrix::trusted(u * psi_in.matrix() * u.adjoint());
  const DensityMatrix phi = DensityMatrix::trusted(u * phi_in.matrix() * u.adjoint());
  ProtocolShape shape;
  shape.inputs = inputs;
  shape.experiments = experiments;
  shape.qubits = cfg.qubits;
  for (std::size_t k = 0; k < experiments; ++k) {
    shape.channels.emplace_back(inputs, effective_noise_channel(cfg, k));
  }
  LayeredProofChain chain;
  const Matrix psi_prod = product_output(shape, psi);
  const Matrix phi_prod = product_output(shape, phi);
  chain.trace_product = trace_distance(psi_prod, phi_prod);

  const auto full_dim = static_cast<std::size_t>(psi_prod.rows());
  const Matrix mixed = Matrix::Identity(full_dim, full_dim) / static_cast<double>(full_dim);
  chain.split_to_mixed = trace_distance(psi_prod, mixed) + trace_distance(phi_prod, mixed);

  const DensityMatrix block_mixed = DensityMatrix::maximally_mixed(
      static_cast<std::size_t>(std::llround(std::pow(cfg.dim(), inputs))));
  const double pinsker = std::sqrt(std::numbers::ln2 / 2.0);
  const double qn = static_cast<double>(cfg.qubits * inputs);
  const double depth = static_cast<double>(cfg.depth());
  for (std::size_t k = 0; k < experiments; ++k) {
    for (const DensityMatrix* in : {&psi_in, &phi_in}) {
      const DensityMatrix block = simulate_noisy_circuit(cfg, k, *in).tensor_power(inputs);
      chain.per_experiment_sum += trace_distance(block, block_mixed);
      const EntropyEnvelope env = entropy_decay_envelope(cfg, inputs, *in, k, limits);
      chain.pinsker_sum += pinsker * std::sqrt(std::max(0.0, env.lhs));
      chain.entropies.push_back(env);
    }
    chain.envelope_sum += std::sqrt(2.0 * std::numbers::ln2) * std::sqrt(qn) *
                          std::pow(1.0 - cfg.experiment_rates[k], depth / 2.0);
  }
  const double eps_min =
      *std::min_element(cfg.experiment_rates.begin(), cfg.experiment_rates.end());
  chain.analytic_denominator = std::sqrt(2.0 * std::numbers::ln2) * std::sqrt(qn) *
                               static_cast<double>(experiments) *
                               std::pow(1.0 - eps_min, depth / 2.0);
  return chain;
}

}  // namespace qem
