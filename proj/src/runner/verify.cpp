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

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qem/bounds.hpp"
#include "qem/channel.hpp"
#include "qem/circuit.hpp"
#include "qem/distance.hpp"
#include "qem/errors.hpp"
#include "qem/extrapolation.hpp"
#include "qem/pauli.hpp"
#include "qem/pec.hpp"
#include "qem/random.hpp"
#include "qem/runner.hpp"
#include "qem/virtual_distillation.hpp"

namespace qem {

namespace {

constexpr double kCheckTol = 1e-9;

DensityMatrix mixture(std::size_t dim, std::uint64_t seed) {
  const double w = 0.2 + 0.6 * static_cast<double>(mix_seed(seed) % 1000) / 1000.0;
  const Matrix m = w * haar_random_state(dim, mix_seed(seed + 1)).matrix() +
                   (1.0 - w) * haar_random_state(dim, mix_seed(seed + 2)).matrix();
  return DensityMatrix::from_matrix(m);
}

Json check(const std::string& name, double worst, double tol) {
  Json j;
  j["name"] = name;
  j["passed"] = std::isfinite(worst) && worst <= tol;
  j["worst"] = json_number(worst);
  j["tolerance"] = tol;
  return j;
}

// Runs body; a thrown numerical error counts as an infinite violation.
double guarded(const std::function<double()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (is_numerical(e.code())) return std::numeric_limits<double>::infinity();
    throw;
  }
}

double pair_bound(const QuantumChannel& ch) {
  return spread_bound_from_pair(ProtocolShape::uniform(ch, 1, 1, 0.0),
                                DensityMatrix::pure(named_ket("plus")),
                                DensityMatrix::pure(named_ket("minus")), Relaxation::kTraceProduct)
      .bound_value;
}

}  // namespace

Json verify_invariants(std::uint64_t seed) {
  Json checks = Json::array();
  const double rates[] = {0.05, 0.1, 0.2};

  checks.push_back(check("dephasing_optimality", guarded([&] {
    double worst = 0.0;
    for (double e : rates) {
      const QuantumChannel ch = standard_channel(ChannelKind::kDephasing, {.rate = e});
      const double target = 1.0 / (1.0 - 2.0 * e);
      worst = std::max({worst, std::abs(quasiprob_decompose(ch).gamma - target),
                        std::abs(pair_bound(ch) - target)});
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("depolarizing_gap", guarded([&] {
    double worst = 0.0;
    for (double e : rates) {
      const QuantumChannel ch = standard_channel(ChannelKind::kDepolarizingQubit, {.rate = e});
      const double gap = quasiprob_decompose(ch).gamma - pair_bound(ch);
      worst = std::max(worst, std::abs(gap - (e / 2.0) / (1.0 - e)));
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("layered_chain", guarded([&] {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < 8; ++i) {
      const std::size_t n = 1 + i % 2, k = 1 + (i / 2) % 2, depth = 1 + i % 4;
      const double eps = i % 3 ? 0.1 : 0.2;
      const auto circuit = random_layered_circuit(n, depth, std::vector<double>(k, eps), mix_seed(seed + i));
      const LayeredProofChain chain = layered_proof_chain(circuit, 1, haar_random_state(1u << n, mix_seed(seed + 100 + i)),
                                                 haar_random_state(1u << n, mix_seed(seed + 200 + i)));
      worst = std::max(worst, chain.worst_violation());
      for (const auto& env : chain.entropies) worst = std::max(worst, env.lhs - env.rhs);
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("layered_ratio", guarded([&] {
    double worst = 0.0;
    const double ratio = std::sqrt(1.0 / 0.9);
    for (std::size_t depth = 1; depth < 12; ++depth) {
      const double a = layered_depolarizing_bound(1, 1, 1, 0.0, {0.1}, depth);
      const double b = layered_depolarizing_bound(1, 1, 1, 0.0, {0.1}, depth + 1);
      worst = std::max(worst, std::abs(b / a - ratio));
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("sub_fidelity_below_fidelity", guarded([&] {
    double worst = -1.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const std::size_t d = i % 2 ? 4 : 2;
      const DensityMatrix r = mixture(d, seed + 3 * i), s = mixture(d, seed + 3 * i + 1000);
      worst = std::max(worst, sub_fidelity(r, s) - fidelity(r, s));
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("vd_dual_path", guarded([&] {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 6; ++i) {
      for (std::size_t q : {2u, 3u}) {
        for (char w : {'X', 'Y', 'Z'}) {
          const VdProbability p = vd_outcome_probability(mixture(2, seed + i), pauli_matrix(w), q);
          worst = std::max(worst, std::abs(p.closed_form - p.circuit));
        }
      }
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("richardson_spread", guarded([&] {
    return std::max(std::abs(richardson_coefficients(1).spread() - 3.0),
                    std::abs(richardson_coefficients(2).spread() - 7.0));
  }), kCheckTol));

  checks.push_back(check("pec_unbiased", guarded([&] {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 10; ++i) {
      const QuantumChannel ch =
          i % 2 ? standard_channel(ChannelKind::kLocalDepolarizing, {.rate = 0.05 * (1 + i % 3), .qubits = 2})
                : standard_channel(ChannelKind::kDephasing, {.rate = 0.05 * (1 + i % 3)});
      const std::size_t d = ch.dim_in();
      const Observable a = Observable::pauli(d == 2 ? "X" : "XZ", 0.5);
      const DensityMatrix psi = mixture(d, seed + 7 * i);
      const auto spec = pec_spec(ch, quasiprob_decompose(ch), a);
      worst = std::max(worst, std::abs(exact_expectation(spec, psi) - expectation(a, psi)));
    }
    return worst;
  }), kCheckTol));

  checks.push_back(check("bound_dominance", guarded([&] {
    std::vector<MitigationProtocolSpec> specs;
    const Observable x = Observable::pauli("X", 0.5);
    for (double e : rates) {
      for (ChannelKind kind : {ChannelKind::kDephasing, ChannelKind::kDepolarizingQubit}) {
        const QuantumChannel ch = standard_channel(kind, {.rate = e});
        specs.push_back(pec_spec(ch, quasiprob_decompose(ch), x));
      }
    }
    for (std::size_t order : {1u, 2u}) {
      for (const auto& fam : noise_family_names()) {
        specs.push_back(extrapolation_spec(noise_family(fam), 0.05, richardson_coefficients(order), x));
      }
    }
    for (std::size_t q : {2u, 3u}) {
      specs.push_back(vd_spec(SpectralModel::uniform(named_ket("plus"), 0.8), q, x).spec);
    }
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& spec : specs) {
      for (Relaxation rel : {Relaxation::kTraceProduct, Relaxation::kFidelity, Relaxation::kSubFidelity}) {
        const BoundReport best = optimize_bound_over_pairs(spec.shape, rel, {PairSearch::Mode::kPresets, 0, 0});
        worst = std::max(worst, best.bound_value - spec.spread());
      }
    }
    return worst;
  }), kCheckTol));

  return checks;
}

}  // namespace qem
