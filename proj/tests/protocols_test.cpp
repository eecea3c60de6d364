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

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "gtest/gtest.h"
#include "qem/bounds.hpp"
#include "qem/channel.hpp"
#include "qem/errors.hpp"
#include "qem/extrapolation.hpp"
#include "qem/mitigation.hpp"
#include "qem/pauli.hpp"
#include "qem/pec.hpp"
#include "qem/state.hpp"
#include "qem/virtual_distillation.hpp"
#include "test_support.hpp"

namespace qem {
namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

DensityMatrix ket(const char* name) { return DensityMatrix::pure(named_ket(name)); }

QuantumChannel dephasing(double e) { return standard_channel(ChannelKind::kDephasing, {.rate = e}); }
QuantumChannel depolarizing(double e) {
  return standard_channel(ChannelKind::kDepolarizingQubit, {.rate = e});
}

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Observable random_normalized_observable(std::size_t d, std::uint64_t seed) {
  const Matrix h = testing::random_mixed_state(d, seed).matrix() -
                   testing::random_mixed_state(d, seed + 1000).matrix();
  const double norm = hermitian_eigenvalues(h).cwiseAbs().maxCoeff();
  return Observable::from_matrix(h * (0.5 / norm));
}

TEST(TransferMatrix, Examples) {
  EXPECT_LT((pauli_transfer_matrix(QuantumChannel::identity(2)) - RealMatrix::Identity(4, 4))
                .cwiseAbs()
                .maxCoeff(),
            1e-15);
  RealVector deph(4), dep(4);
  deph << 1.0, 0.8, 0.8, 1.0;
  dep << 1.0, 0.9, 0.9, 0.9;
  EXPECT_LT((pauli_transfer_matrix(dephasing(0.1)) - RealMatrix(deph.asDiagonal())).cwiseAbs().maxCoeff(),
            1e-15);
  EXPECT_LT((pauli_transfer_matrix(depolarizing(0.1)) - RealMatrix(dep.asDiagonal())).cwiseAbs().maxCoeff(),
            1e-15);
}

TEST(TransferMatrix, CompositionIsMatrixProduct) {
  const QuantumChannel a = QuantumChannel::unitary(haar_random_unitary(4, 1));
  const QuantumChannel b = standard_channel(ChannelKind::kLocalDepolarizing, {.rate = 0.3, .qubits = 2});
  const RealMatrix lhs = pauli_transfer_matrix(compose(a, b));
  const RealMatrix rhs = pauli_transfer_matrix(a) * pauli_transfer_matrix(b);
  EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_EQ(code_of([] {
              pauli_transfer_matrix(standard_channel(ChannelKind::kDepolarizingD, {.rate = 0.1, .dim = 3}));
            }),
            ErrorCode::kDimensionNotPowerOfTwo);
}

TEST(QuasiProb, DephasingCoefficients) {
  const QuasiProbDecomposition q = quasiprob_decompose(dephasing(0.1));
  ASSERT_EQ(q.basis_labels.size(), 2u);
  EXPECT_EQ(q.basis_labels[0], "I");
  EXPECT_EQ(q.basis_labels[1], "Z");
  EXPECT_NEAR(q.coefficients[0], 1.125, 1e-12);
  EXPECT_NEAR(q.coefficients[1], -0.125, 1e-12);
  EXPECT_NEAR(q.gamma, 1.25, 1e-12);
}

TEST(QuasiProb, DepolarizingGamma) {
  for (double e : {0.05, 0.1, 0.2}) {
    EXPECT_NEAR(quasiprob_decompose(depolarizing(e)).gamma, (1.0 + e / 2.0) / (1.0 - e), 1e-12);
  }
  EXPECT_NEAR(quasiprob_decompose(depolarizing(0.1)).gamma, 1.16667, 5e-6);
}

TEST(QuasiProb, IdentityAndReconstruction) {
  const QuasiProbDecomposition id = quasiprob_decompose(QuantumChannel::identity(2));
  ASSERT_EQ(id.coefficients.size(), 1u);
  EXPECT_EQ(id.basis_labels[0], "I");
  EXPECT_NEAR(id.gamma, 1.0, 1e-12);
  // Two-qubit Pauli noise; sum c_j B_j composed with the target is the identity.
  const QuantumChannel target = standard_channel(ChannelKind::kLocalDepolarizing, {.rate = 0.2, .qubits = 2});
  const QuasiProbDecomposition q = quasiprob_decompose(target);
  RealMatrix sum = RealMatrix::Zero(16, 16);
  for (std::size_t j = 0; j < q.basis.size(); ++j) sum += q.coefficients[j] * pauli_transfer_matrix(q.basis[j]);
  EXPECT_LT((sum * pauli_transfer_matrix(target) - RealMatrix::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_GE(q.gamma, 1.0 - 1e-9);
}

TEST(QuasiProb, Errors) {
  EXPECT_EQ(code_of([] { quasiprob_decompose(dephasing(0.5)); }), ErrorCode::kNotInvertibleChannel);
  const auto basis = pauli_conjugation_basis(1);
  EXPECT_EQ(code_of([&] {
              quasiprob_decompose(dephasing(0.1), {basis[0], basis[0], basis[3]}, {"I", "I2", "Z"});
            }),
            ErrorCode::kSingularBasis);
  EXPECT_EQ(code_of([&] { quasiprob_decompose(dephasing(0.1), {basis[0], basis[1]}, {"I", "X"}); }),
            ErrorCode::kSingularBasis);
}

TEST(Pec, DephasingExampleIsUnbiased) {
  const QuantumChannel ch = dephasing(0.1);
  const Observable a = Observable::pauli("X", 0.5);
  const MitigationProtocolSpec spec = pec_spec(ch, quasiprob_decompose(ch), a);
  EXPECT_NEAR(exact_expectation(spec, ket("plus")), 0.5, 1e-12);
  EXPECT_NEAR(expectation(a, ch.apply(ket("plus"))), 0.4, 1e-12);
  EXPECT_NEAR(spec.spread(), 1.25, 1e-12);
}

TEST(Pec, IdentityChannel) {
  const QuantumChannel ch = QuantumChannel::identity(2);
  const Observable a = Observable::pauli("Y", 0.5);
  const MitigationProtocolSpec spec = pec_spec(ch, quasiprob_decompose(ch), a);
  const DensityMatrix psi = haar_random_state(2, 4);
  EXPECT_NEAR(exact_expectation(spec, psi), expectation(a, psi), 1e-12);
  EXPECT_NEAR(spec.spread(), 1.0, 1e-12);
}

TEST(Pec, UnbiasedOnRandomInputs) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const QuantumChannel ch =
        s % 2 ? standard_channel(ChannelKind::kLocalDepolarizing, {.rate = 0.02 * (s % 7 + 1), .qubits = 2})
              : compose(dephasing(0.03 * (s % 5 + 1)), depolarizing(0.1));
    const std::size_t d = ch.dim_in();
    const Observable a = random_normalized_observable(d, s);
    const DensityMatrix psi = s % 3 ? haar_random_state(d, s) : testing::random_mixed_state(d, s);
    const QuasiProbDecomposition q = quasiprob_decompose(ch);
    EXPECT_NEAR(exact_expectation(pec_spec(ch, q, a), psi), expectation(a, psi), 1e-9);
    // Oracle: sum_j c_j Tr(A B_j(E(psi))) evaluated directly.
    double direct = 0.0;
    for (std::size_t j = 0; j < q.basis.size(); ++j) {
      direct += q.coefficients[j] * expectation(a, q.basis[j].apply(ch.apply(psi)));
    }
    EXPECT_NEAR(direct, expectation(a, psi), 1e-9);
  }
}

TEST(RunMitigation, MeanWithinHoeffdingAccuracy) {
  const QuantumChannel ch = dephasing(0.1);
  const MitigationProtocolSpec spec = pec_spec(ch, quasiprob_decompose(ch), Observable::pauli("X", 0.5));
  const MitigationRun run = run_mitigation(spec, ket("plus"), 100000, 1);
  // Accuracy at 99% confidence for M = 1e5, from inverting the round count.
  const double delta = spec.spread() * std::sqrt(2.0 * std::log(2.0 / 0.01) / 100000.0);
  EXPECT_LT(std::abs(run.mean - 0.5), delta);
  EXPECT_LT(std::abs(run.mean - 0.5), 3.0 * run.std_dev / std::sqrt(100000.0));
  EXPECT_LE(run.empirical_spread, spec.spread() + 1e-12);
  EXPECT_NEAR(run.empirical_spread, 1.25, 1e-12);
  const MitigationRun again = run_mitigation(spec, ket("plus"), 100000, 1);
  EXPECT_EQ(run.mean, again.mean);
}

TEST(RunMitigation, DeterministicOutcome) {
  const QuantumChannel ch = QuantumChannel::identity(2);
  const MitigationProtocolSpec spec = pec_spec(ch, quasiprob_decompose(ch), Observable::pauli("Z", 0.5));
  const MitigationRun run = run_mitigation(spec, ket("zero"), 1, 3);
  EXPECT_EQ(run.mean, 0.5);
  EXPECT_EQ(run.std_dev, 0.0);
  EXPECT_EQ(code_of([&] { run_mitigation(spec, DensityMatrix::maximally_mixed(4), 1, 3); }),
            ErrorCode::kDimensionMismatch);
}

TEST(Hoeffding, Examples) {
  EXPECT_EQ(hoeffding_samples(1.25, {0.05, 0.05}), 4612u);
  EXPECT_EQ(hoeffding_samples(1.0, {0.1, 2.0 / std::exp(1.0)}), 200u);
  EXPECT_EQ(code_of([] { hoeffding_samples(0.0, {0.1, 0.1}); }), ErrorCode::kInvalidSpread);
}

TEST(Povm, Validation) {
  EXPECT_EQ(code_of([] { Povm::from_elements({0.5 * Matrix::Identity(2, 2)}); }),
            ErrorCode::kNotTracePreserving);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_EQ(code_of([&] { Povm::from_elements({neg, Matrix::Identity(2, 2) - neg}); }),
            ErrorCode::kNotPositive);
}

TEST(Richardson, Coefficients) {
  const ExtrapolationConfig one = richardson_coefficients({1.0, 2.0});
  EXPECT_NEAR(one.coefficients[0], 2.0, 1e-12);
  EXPECT_NEAR(one.coefficients[1], -1.0, 1e-12);
  EXPECT_NEAR(one.spread(), 3.0, 1e-12);
  const ExtrapolationConfig two = richardson_coefficients(2);
  EXPECT_NEAR(two.coefficients[0], 3.0, 1e-12);
  EXPECT_NEAR(two.coefficients[1], -3.0, 1e-12);
  EXPECT_NEAR(two.coefficients[2], 1.0, 1e-12);
  EXPECT_NEAR(two.spread(), 7.0, 1e-12);
  EXPECT_EQ(code_of([] { richardson_coefficients({1.0, 1.0}); }), ErrorCode::kDuplicateNodes);
}

TEST(Richardson, ConstraintsHoldForNonIntegerNodes) {
  const ExtrapolationConfig cfg = richardson_coefficients({1.0, 1.5, 2.25, 3.0});
  for (int t = 0; t <= 3; ++t) {
    double sum = 0.0;
    for (std::size_t r = 0; r < cfg.boosts.size(); ++r) sum += cfg.coefficients[r] * std::pow(cfg.boosts[r], t);
    EXPECT_NEAR(sum, t == 0 ? 1.0 : 0.0, 1e-10);
  }
}

TEST(Extrapolation, DepolarizingIsExactAtFirstOrder) {
  const NoiseFamily fam = noise_family("depolarizing");
  const MitigationProtocolSpec spec =
      extrapolation_spec(fam, 0.1, richardson_coefficients(1), Observable::pauli("Z", 0.5));
  EXPECT_NEAR(exact_expectation(spec, ket("zero")), 2.0 * 0.9 * 0.5 - 0.8 * 0.5, 1e-12);
  EXPECT_NEAR(exact_expectation(spec, ket("zero")), 0.5, 1e-12);
  EXPECT_NEAR(spec.spread(), 3.0, 1e-12);
  EXPECT_EQ(spec.shape.experiments, 2u);
  EXPECT_NEAR(spec.shape.max_bias, 0.0, 1e-12);
}

TEST(Extrapolation, ZeroStrengthIsIdeal) {
  const Observable a = random_normalized_observable(2, 3);
  const DensityMatrix psi = haar_random_state(2, 3);
  for (const auto& name : noise_family_names()) {
    const MitigationProtocolSpec spec =
        extrapolation_spec(noise_family(name), 0.0, richardson_coefficients(2), a);
    EXPECT_NEAR(exact_expectation(spec, psi), expectation(a, psi), 1e-12) << name;
  }
}

TEST(Extrapolation, BiasOrderFollowsRichardsonOrder) {
  const Observable x = Observable::pauli("X", 0.5);
  const std::vector<double> strengths{0.01, 0.02, 0.04, 0.08};
  auto slope = [&](const char* family, std::size_t order) {
    std::vector<double> bias;
    for (double xi : strengths) {
      const auto spec = extrapolation_spec(noise_family(family), xi, richardson_coefficients(order), x);
      bias.push_back(std::abs(exact_expectation(spec, ket("plus")) - 0.5));
    }
    return loglog_slope(strengths, bias);
  };
  EXPECT_NEAR(slope("double_dephasing", 1), 2.0, 0.1);
  EXPECT_NEAR(slope("continuous_dephasing", 1), 2.0, 0.3);
  EXPECT_NEAR(slope("continuous_dephasing", 2), 3.0, 0.3);
}

TEST(Extrapolation, DeclaredBiasBoundsActualBias) {
  for (const char* family : {"double_dephasing", "continuous_dephasing"}) {
    for (double xi : {0.02, 0.1, 0.2}) {
      const auto cfg = richardson_coefficients(1);
      const double bound = extrapolation_bias_bound(noise_family(family), xi, cfg);
      for (std::uint64_t s = 0; s < 10; ++s) {
        const Observable a = random_normalized_observable(2, s);
        const DensityMatrix psi = haar_random_state(2, s);
        const auto spec = extrapolation_spec(noise_family(family), xi, cfg, a);
        EXPECT_LE(std::abs(exact_expectation(spec, psi) - expectation(a, psi)), bound + 1e-12);
      }
    }
  }
}

TEST(Extrapolation, BoostOutOfRange) {
  EXPECT_EQ(code_of([] {
              extrapolation_spec(noise_family("dephasing"), 0.6, richardson_coefficients(1),
                                 Observable::pauli("X", 0.5));
            }),
            ErrorCode::kBoostOutOfRange);
  EXPECT_EQ(code_of([] { noise_family("amplitude"); }), ErrorCode::kParseError);
}

TEST(VirtualDistillation, OutcomeProbabilityExamples) {
  Matrix rho(2, 2);
  rho << 0.8, 0.0, 0.0, 0.2;
  const Matrix z = pauli_matrix('Z');
  const VdProbability p = vd_outcome_probability(DensityMatrix::from_matrix(rho), z, 2);
  EXPECT_NEAR(p.closed_form, 0.8, 1e-12);
  EXPECT_NEAR(p.circuit, 0.8, 1e-9);
  const DensityMatrix psi = haar_random_state(2, 8);
  for (std::size_t q : {2u, 3u, 4u}) {
    const VdProbability pure = vd_outcome_probability(psi, pauli_matrix('X'), q);
    EXPECT_NEAR(pure.closed_form, 0.5 * (1.0 + trace_product(pauli_matrix('X'), psi.matrix()).real()), 1e-12);
    EXPECT_NEAR(vd_outcome_probability(DensityMatrix::maximally_mixed(2), z, q).circuit, 0.5, 1e-12);
  }
}

TEST(VirtualDistillation, CircuitMatchesClosedFormOnMixedStates) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DensityMatrix rho = testing::random_mixed_state(2, s);
    for (std::size_t q : {2u, 3u}) {
      for (char w : {'X', 'Y', 'Z'}) {
        const VdProbability p = vd_outcome_probability(rho, pauli_matrix(w), q);
        EXPECT_NEAR(p.closed_form, p.circuit, 1e-9);
      }
    }
  }
  const DensityMatrix two = testing::random_mixed_state(4, 1);
  const VdProbability p = vd_outcome_probability(two, pauli_string_matrix("XZ"), 2);
  EXPECT_NEAR(p.closed_form, p.circuit, 1e-9);
}

TEST(VirtualDistillation, Errors) {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(2);
  EXPECT_EQ(code_of([&] { vd_outcome_probability(rho, 0.5 * pauli_matrix('Z'), 2); }),
            ErrorCode::kNotInvolution);
  EXPECT_EQ(code_of([&] { vd_outcome_probability(rho, pauli_matrix('Z'), 1); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { vd_outcome_probability(rho, pauli_matrix('Z'), 3, DenseLimits{8}); }),
            ErrorCode::kProductTooLarge);
  EXPECT_EQ(code_of([] { SpectralModel::uniform(named_ket("zero"), 0.5); }),
            ErrorCode::kDominantEigenvalueTooSmall);
}

TEST(VirtualDistillation, PerformanceFields) {
  const SpectralModel model = SpectralModel::uniform(named_ket("zero"), 0.8);
  const VirtualDistillationSpec vd = vd_spec(model, 2, Observable::pauli("Z", 0.5));
  EXPECT_NEAR(vd.bias_bound, 0.03125, 1e-12);
  EXPECT_NEAR(vd.spread_for_observable, 1.5625, 1e-12);
  EXPECT_NEAR(vd.spec.spread(), 1.5625, 1e-12);
  EXPECT_NEAR(vd.single_pauli_witness, 1.5625, 1e-12);
  EXPECT_GE(vd.best_found_spread, std::sqrt(3.0) / 0.64 - 1e-9);
  for (std::size_t q = 2; q < 8; ++q) {
    EXPECT_NEAR(model.bias_bound(q + 1) / model.bias_bound(q), 0.25, 1e-12);
  }
}

TEST(VirtualDistillation, EstimatorExpectationMatchesPowerOracle) {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const std::size_t d = s % 2 ? 4 : 2;
    std::vector<double> rest(d - 1);
    double left = 0.3;
    for (std::size_t k = 0; k + 1 < rest.size(); ++k) {
      rest[k] = left * 0.5;
      left -= rest[k];
    }
    rest.back() = left;
    const SpectralModel model = SpectralModel::around(haar_random_ket(d, s), 0.7, rest);
    const Observable a = random_normalized_observable(d, s);
    for (std::size_t q : {2u, 3u}) {
      const VirtualDistillationSpec vd = vd_spec(model, q, a, {16, s});
      const double value = exact_expectation(vd.spec, model.ideal_state());
      const Matrix rho = model.noisy_state().matrix();
      Matrix power = rho;
      for (std::size_t i = 1; i < q; ++i) power = power * rho;
      EXPECT_NEAR(value, trace_product(a.matrix(), power).real() / std::pow(0.7, q), 1e-9);
      EXPECT_LE(std::abs(value - expectation(a, model.ideal_state())), vd.bias_bound + 1e-12);
      // The shape's channel reproduces the model output.
      const DensityMatrix out = vd.spec.shape.channels[0][0].apply(model.ideal_state());
      EXPECT_LT(max_abs(out.matrix() - rho), 1e-12);
    }
  }
}

TEST(BoundDominance, ShippedProtocolsNeverBeatTheBound) {
  std::vector<MitigationProtocolSpec> specs;
  for (double e : {0.05, 0.1, 0.2}) {
    specs.push_back(pec_spec(dephasing(e), quasiprob_decompose(dephasing(e)), Observable::pauli("X", 0.5)));
    specs.push_back(pec_spec(depolarizing(e), quasiprob_decompose(depolarizing(e)), Observable::pauli("Z", 0.5)));
  }
  for (std::size_t r : {1u, 2u}) {
    for (const char* fam : {"depolarizing", "double_dephasing", "continuous_dephasing"}) {
      specs.push_back(extrapolation_spec(noise_family(fam), 0.05, richardson_coefficients(r), Observable::pauli("X", 0.5)));
    }
  }
  for (std::size_t q : {2u, 3u}) {
    specs.push_back(vd_spec(SpectralModel::uniform(named_ket("plus"), 0.8), q, Observable::pauli("X", 0.5)).spec);
  }
  for (const auto& spec : specs) {
    for (Relaxation rel : {Relaxation::kTraceProduct, Relaxation::kFidelity, Relaxation::kSubFidelity}) {
      for (auto mode : {PairSearch::Mode::kPresets, PairSearch::Mode::kRandom}) {
        const BoundReport best = optimize_bound_over_pairs(spec.shape, rel, {mode, 32, 5});
        EXPECT_GE(spec.spread(), best.bound_value - 1e-9) << spec.protocol;
      }
    }
  }
}

}  // namespace
}  // namespace qem
