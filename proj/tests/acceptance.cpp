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

// Acceptance gate: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs; the exit status is nonzero when any selected criterion
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "qem/bounds.hpp"
#include "qem/channel.hpp"
#include "qem/circuit.hpp"
#include "qem/distance.hpp"
#include "qem/extrapolation.hpp"
#include "qem/mitigation.hpp"
#include "qem/pauli.hpp"
#include "qem/pec.hpp"
#include "qem/subfid.hpp"
#include "qem/virtual_distillation.hpp"
#include "test_support.hpp"

namespace {

using namespace qem;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Least-squares slope of y against x.
double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

DensityMatrix ket(const char* name) { return DensityMatrix::pure(named_ket(name)); }

double k1_pair_bound(const QuantumChannel& ch) {
  return spread_bound_from_pair(ProtocolShape::uniform(ch, 1, 1, 0.0), ket("plus"), ket("minus"),
                                Relaxation::kExactK1)
      .bound_value;
}

Outcome dephasing_optimality() {
  double worst = 0.0;
  for (double e : {0.05, 0.1, 0.2}) {
    const QuantumChannel ch = standard_channel(ChannelKind::kDephasing, {.rate = e});
    const double target = 1.0 / (1.0 - 2.0 * e);
    const double gamma = quasiprob_decompose(ch).gamma;
    const double bound = k1_pair_bound(ch);
    worst = std::max({worst, std::abs(gamma - target), std::abs(bound - target), std::abs(gamma - bound)});
  }
  return {worst <= 1e-9, "PEC cost vs bound vs 1/(1-2e), worst deviation " + fmt("%.3g", worst)};
}

Outcome depolarizing_gap() {
  double worst = 0.0;
  for (double e : {0.05, 0.1, 0.2}) {
    const QuantumChannel ch = standard_channel(ChannelKind::kDepolarizingQubit, {.rate = e});
    const double gamma = quasiprob_decompose(ch).gamma;
    const double bound = k1_pair_bound(ch);
    worst = std::max({worst, std::abs(gamma - (1.0 + e / 2.0) / (1.0 - e)),
                      std::abs(bound - 1.0 / (1.0 - e)),
                      std::abs((gamma - bound) - (e / 2.0) / (1.0 - e))});
  }
  return {worst <= 1e-9, "gap vs (e/2)/(1-e), worst deviation " + fmt("%.3g", worst)};
}

Outcome layered_chain() {
  double worst = -1.0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 2, k = 1 + (i / 2) % 2, depth = 1 + i % 6;
    const double eps = (i / 4) % 2 ? 0.2 : 0.1;
    std::vector<double> rates(k, eps);
    if (k == 2 && i % 3 == 0) rates[1] = eps == 0.1 ? 0.2 : 0.1;
    const auto circuit = random_layered_circuit(n, depth, rates, 5000 + i);
    const std::size_t d = std::size_t{1} << n;
    const DensityMatrix psi = haar_random_state(d, 6000 + i), phi = haar_random_state(d, 7000 + i);
    const LayeredProofChain chain = layered_proof_chain(circuit, 1, psi, phi);
    worst = std::max(worst, chain.worst_violation());
    for (std::size_t e = 0; e < k; ++e) {
      const EntropyEnvelope env = entropy_decay_envelope(circuit, 1, psi, e);
      worst = std::max(worst, env.lhs - env.rhs);
    }
  }
  return {worst <= 1e-9, "50 instances, largest link violation " + fmt("%.3g", worst)};
}

Outcome exponential_witness() {
  double ratio_dev = 0.0;
  const double ratio = std::sqrt(1.0 / 0.9);
  for (std::size_t depth = 1; depth < 12; ++depth) {
    const double a = layered_depolarizing_bound(1, 1, 1, 0.0, {0.1}, depth);
    const double b = layered_depolarizing_bound(1, 1, 1, 0.0, {0.1}, depth + 1);
    ratio_dev = std::max(ratio_dev, std::abs(b / a - ratio));
  }
  const double target = std::log2(0.9);
  std::string detail = "sweep ratio deviation " + fmt("%.3g", ratio_dev) + "; decay slope per layer";
  bool decay_ok = true;
  for (std::size_t n : {1u, 2u}) {
    std::vector<double> depths, logs;
    for (std::uint64_t s = 0; s < 10; ++s) {
      for (std::size_t depth = 1; depth <= 12; ++depth) {
        const auto circuit = random_layered_circuit(n, depth, {0.1}, 9000 + s);
        const double rel = entropy_decay_envelope(circuit, 1, DensityMatrix::pure(named_ket("zero", n))).lhs;
        depths.push_back(static_cast<double>(depth));
        logs.push_back(std::log2(rel));
      }
    }
    const double slope = linear_slope(depths, logs);
    const bool ok = std::abs(slope / target - 1.0) <= 0.15;
    decay_ok = decay_ok && ok;
    detail += " n=" + std::to_string(n) + ": " + fmt("%.4f", slope);
  }
  detail += " (target " + fmt("%.4f", target) + " +-15%)";
  return {ratio_dev <= 1e-9 && decay_ok, detail};
}

Outcome pec_statistics() {
  const QuantumChannel ch = standard_channel(ChannelKind::kDephasing, {.rate = 0.1});
  const MitigationProtocolSpec spec = pec_spec(ch, quasiprob_decompose(ch), Observable::pauli("X", 0.5));
  const std::uint64_t m = hoeffding_samples(spec.spread(), {0.05, 0.05});
  int failures = 0;
  for (std::uint64_t run = 0; run < 200; ++run) {
    const MitigationRun r = run_mitigation(spec, ket("plus"), m, 100 + run);
    if (std::abs(r.mean - 0.5) > 0.05) ++failures;
  }
  const double fraction = failures / 200.0;
  return {m == 4612 && fraction <= 0.08,
          "M = " + std::to_string(m) + ", failure fraction " + fmt("%.3f", fraction) + " (limit 0.08)"};
}

Outcome extrapolation_order() {
  const std::vector<double> strengths{0.01, 0.02, 0.04, 0.08};
  const Observable x = Observable::pauli("X", 0.5);
  bool ok = true;
  std::string detail;
  for (std::size_t order : {1u, 2u}) {
    const ExtrapolationConfig cfg = richardson_coefficients(order);
    std::vector<double> bias;
    for (double xi : strengths) {
      const auto spec = extrapolation_spec(noise_family("continuous_dephasing"), xi, cfg, x);
      bias.push_back(std::abs(exact_expectation(spec, ket("plus")) - 0.5));
    }
    const double slope = loglog_slope(strengths, bias);
    double gamma_sum = 0.0;
    for (double c : cfg.coefficients) gamma_sum += std::abs(c);
    const double expected_spread = order == 1 ? 3.0 : 7.0;
    ok = ok && std::abs(slope - static_cast<double>(order + 1)) <= 0.3 &&
         std::abs(cfg.spread() - gamma_sum) <= 1e-12 && std::abs(cfg.spread() - expected_spread) <= 1e-12;
    detail += "R=" + std::to_string(order) + ": exponent " + fmt("%.3f", slope) + ", spread " +
              fmt("%.6g", cfg.spread()) + "; ";
  }
  return {ok, detail};
}

Outcome virtual_distillation() {
  double p0_dev = 0.0, ratio_dev = 0.0, excess = -1.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityMatrix rho = testing::random_mixed_state(2, 300 + s);
    for (std::size_t q : {2u, 3u}) {
      for (char w : {'X', 'Y', 'Z'}) {
        const VdProbability p = vd_outcome_probability(rho, pauli_matrix(w), q);
        p0_dev = std::max(p0_dev, std::abs(p.closed_form - p.circuit));
      }
    }
  }
  for (double lambda : {0.8, 2.0 / 3.0, 0.9}) {
    const SpectralModel model = SpectralModel::uniform(haar_random_ket(2, 11), lambda);
    for (std::size_t q = 2; q < 8; ++q) {
      ratio_dev = std::max(ratio_dev, std::abs(model.bias_bound(q + 1) / model.bias_bound(q) -
                                               (1.0 - lambda) / lambda));
    }
    for (std::size_t q : {2u, 3u}) {
      for (char w : {'X', 'Y', 'Z'}) {
        const Observable a = Observable::pauli(std::string(1, w), 0.5);
        const VirtualDistillationSpec vd = vd_spec(model, q, a, {16, 0});
        const double bias = exact_expectation(vd.spec, model.ideal_state()) - expectation(a, model.ideal_state());
        excess = std::max(excess, std::abs(bias) - vd.bias_bound);
      }
    }
  }
  return {p0_dev <= 1e-9 && ratio_dev <= 1e-12 && excess <= 1e-12,
          "p0 dual-path deviation " + fmt("%.3g", p0_dev) + ", bias ratio deviation " +
              fmt("%.3g", ratio_dev) + ", bias minus envelope " + fmt("%.3g", excess)};
}

Outcome sub_fidelity_pipeline() {
  double order_violation = -1.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t d = s % 2 ? 4 : 2;
    const DensityMatrix r = testing::random_mixed_state(d, 400 + s), g = testing::random_mixed_state(d, 600 + s);
    order_violation = std::max(order_violation, sub_fidelity(r, g) - fidelity(r, g));
  }
  int misses = 0;
  double bound_excess = -1e300;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t n = 1 + s % 2;
    const QuantumChannel ch = standard_channel(ChannelKind::kLocalDepolarizing,
                                               {.rate = 0.1 + 0.02 * (s % 5), .qubits = n});
    const std::size_t d = std::size_t{1} << n;
    const DensityMatrix psi = haar_random_state(d, 800 + s), phi = haar_random_state(d, 900 + s);
    const DensityMatrix rho = ch.apply(psi), sigma = ch.apply(phi);
    const SubFidelityEstimate est = estimate_subfidelity(rho, sigma, 100000, 1000 + s);
    if (std::abs(est.value - sub_fidelity(rho, sigma)) > 4.0 * est.ci) ++misses;
    const ProtocolShape shape = ProtocolShape::uniform(ch, 1, 1, 0.0);
    const BoundReport from_estimate = spread_bound_from_overlap(
        shape, trace_distance(psi, phi), std::clamp(est.value, 0.0, 1.0), Relaxation::kSubFidelity);
    const BoundReport from_fidelity = spread_bound_from_pair(shape, psi, phi, Relaxation::kFidelity);
    const double bound_ci = overlap_bound_std_error(shape, trace_distance(psi, phi), est.value, est.ci);
    bound_excess = std::max(bound_excess, from_estimate.bound_value - (from_fidelity.bound_value + 3.0 * bound_ci));
  }
  return {order_violation <= 1e-9 && misses == 0 && bound_excess <= 0.0,
          "max(E - F) " + fmt("%.3g", order_violation) + ", estimates outside 4 se: " +
              std::to_string(misses) + "/20, max bound excess " + fmt("%.3g", bound_excess)};
}

Outcome bound_dominance() {
  struct Shipped {
    MitigationProtocolSpec spec;
    DensityMatrix psi;
  };
  std::vector<Shipped> shipped;
  const Observable x = Observable::pauli("X", 0.5);
  for (double e : {0.05, 0.1, 0.2}) {
    for (ChannelKind kind : {ChannelKind::kDephasing, ChannelKind::kDepolarizingQubit}) {
      const QuantumChannel ch = standard_channel(kind, {.rate = e});
      shipped.push_back({pec_spec(ch, quasiprob_decompose(ch), x), ket("plus")});
    }
  }
  const QuantumChannel local = standard_channel(ChannelKind::kLocalDepolarizing, {.rate = 0.1, .qubits = 2});
  shipped.push_back({pec_spec(local, quasiprob_decompose(local), Observable::pauli("XZ", 0.5)),
                     DensityMatrix::pure(named_ket("plus", 2))});
  for (std::size_t order : {1u, 2u}) {
    for (const auto& fam : noise_family_names()) {
      for (double xi : {0.02, 0.05}) {
        shipped.push_back({extrapolation_spec(noise_family(fam), xi, richardson_coefficients(order), x), ket("plus")});
      }
    }
  }
  for (double lambda : {0.8, 0.9}) {
    for (std::size_t q : {2u, 3u}) {
      const SpectralModel model = SpectralModel::uniform(named_ket("plus"), lambda);
      shipped.push_back({vd_spec(model, q, x).spec, model.ideal_state()});
    }
  }
  double worst_declared = -1e300, worst_observed = -1e300;
  for (const auto& [spec, psi] : shipped) {
    const MitigationRun run = run_mitigation(spec, psi, 20000, 17);
    std::vector<Relaxation> rels{Relaxation::kTraceProduct, Relaxation::kFidelity, Relaxation::kSubFidelity};
    if (spec.shape.experiments == 1) rels.push_back(Relaxation::kExactK1);
    for (Relaxation rel : rels) {
      for (auto mode : {PairSearch::Mode::kPresets, PairSearch::Mode::kRandom}) {
        const BoundReport best = optimize_bound_over_pairs(spec.shape, rel, {mode, 64, 3});
        worst_declared = std::max(worst_declared, best.bound_value - spec.spread());
        worst_observed = std::max(worst_observed, best.bound_value - run.empirical_spread);
      }
    }
  }
  return {worst_declared <= 1e-9 && worst_observed <= 1e-9,
          std::to_string(shipped.size()) + " specs; max(bound - declared) " + fmt("%.3g", worst_declared) +
              ", max(bound - observed) " + fmt("%.3g", worst_observed)};
}

struct Criterion {
  const char* title;
  double time_limit;  // seconds, 0 = none
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"dephasing optimality", 1.0, dephasing_optimality},
      {"depolarizing gap", 1.0, depolarizing_gap},
      {"layered proof chain", 60.0, layered_chain},
      {"exponential scaling witness", 0.0, exponential_witness},
      {"PEC statistical contract", 120.0, pec_statistics},
      {"extrapolation order", 0.0, extrapolation_order},
      {"virtual distillation", 0.0, virtual_distillation},
      {"sub-fidelity pipeline", 0.0, sub_fidelity_pipeline},
      {"never violate the bound", 0.0, bound_dominance},
  };
  std::size_t only = 0;
  if (argc > 1) {
    only = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
    if (only < 1 || only > criteria.size()) {
      std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
      return 2;
    }
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && only != i + 1) continue;
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      o.passed = false;
      o.detail += "; over time limit";
    }
    all = all && o.passed;
    std::printf("criterion %zu %s: %s -- %s (%.2f s)\n", i + 1, o.passed ? "PASS" : "FAIL", c.title,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
