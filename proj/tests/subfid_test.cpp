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
#include <complex>

#include "gtest/gtest.h"
#include "qem/distance.hpp"
#include "qem/errors.hpp"
#include "qem/linalg.hpp"
#include "qem/state.hpp"
#include "qem/subfid.hpp"
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

double overlap_oracle(const DensityMatrix& r, const DensityMatrix& s) {
  return (r.matrix() * s.matrix()).trace().real();
}
double quartic_oracle(const DensityMatrix& r, const DensityMatrix& s) {
  const Matrix rs = r.matrix() * s.matrix();
  return (rs * rs).trace().real();
}

void expect_basis_diagonalizes(const SiteBasis& basis, const Matrix& op) {
  const auto d = basis.vectors.rows();
  EXPECT_LT(max_abs(basis.vectors.adjoint() * basis.vectors - Matrix::Identity(d, d)), 1e-12);
  Matrix diag = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) diag(i, i) = basis.eigenvalues[static_cast<std::size_t>(i)];
  EXPECT_LT(max_abs(op * basis.vectors - basis.vectors * diag), 1e-12);
}

TEST(SwapTest, Examples) {
  const TestProbability same = swap_test_probability(ket("zero"), ket("zero"));
  EXPECT_NEAR(same.closed_form, 1.0, 1e-12);
  EXPECT_NEAR(same.circuit, 1.0, 1e-12);
  EXPECT_NEAR(swap_test_probability(ket("zero"), ket("one")).circuit, 0.5, 1e-12);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(swap_test_probability(mixed, mixed).circuit, 0.75, 1e-12);
}

TEST(SwapTest, CircuitMatchesOverlapOnRandomPairs) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t d = s % 2 ? 4 : 2;
    const DensityMatrix r = testing::random_mixed_state(d, s), g = testing::random_mixed_state(d, s + 50);
    const TestProbability p = swap_test_probability(r, g);
    EXPECT_NEAR(p.circuit, 0.5 * (1.0 + overlap_oracle(r, g)), 1e-9);
  }
  EXPECT_EQ(code_of([] { swap_test_probability(ket("zero"), DensityMatrix::maximally_mixed(4)); }),
            ErrorCode::kDimensionMismatch);
}

TEST(CycleTest, Examples) {
  EXPECT_NEAR(cycle_test_probability(ket("plus"), ket("plus")).circuit, 1.0, 1e-12);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  EXPECT_NEAR(cycle_test_probability(mixed, mixed).circuit, 0.5625, 1e-12);
  EXPECT_NEAR(cycle_test_probability(ket("zero"), ket("one")).circuit, 0.5, 1e-12);
  for (std::uint64_t s = 0; s < 6; ++s) {
    const DensityMatrix r = testing::random_mixed_state(2, s), g = testing::random_mixed_state(2, s + 9);
    EXPECT_NEAR(cycle_test_probability(r, g).circuit, 0.5 * (1.0 + quartic_oracle(r, g)), 1e-9);
  }
  EXPECT_EQ(code_of([] {
              cycle_test_probability(DensityMatrix::maximally_mixed(4), DensityMatrix::maximally_mixed(4),
                                     DenseLimits{256});
            }),
            ErrorCode::kProductTooLarge);
}

TEST(SiteBases, DiagonalizeShiftOperators) {
  expect_basis_diagonalizes(bell_basis(), register_cyclic_shift(2, 2));
  const SiteBasis& bell = bell_basis();
  EXPECT_EQ(bell.eigenvalues[3], Complex(-1.0, 0.0));
  expect_basis_diagonalizes(four_qubit_cycle_basis(), register_cyclic_shift(4, 2));
  for (const Complex& ev : four_qubit_cycle_basis().eigenvalues) {
    EXPECT_NEAR(std::abs(ev), 1.0, 1e-15);
    EXPECT_NEAR(std::abs(std::pow(ev, 4) - Complex(1.0, 0.0)), 0.0, 1e-12);
  }
}

TEST(DestructiveSwap, ConvergesToOverlap) {
  const DensityMatrix r = testing::random_mixed_state(4, 2), g = testing::random_mixed_state(4, 3);
  const OverlapEstimate est = destructive_swap_estimate(r, g, 40000, 7);
  EXPECT_EQ(est.shots, 40000u);
  EXPECT_EQ(est.method, OverlapMethod::kDestructiveSwap);
  EXPECT_LT(std::abs(est.value - overlap_oracle(r, g)), 4.0 * est.std_error);
  EXPECT_LT(est.std_error, 0.01);
  const OverlapEstimate same = destructive_swap_estimate(ket("zero"), ket("zero"), 100, 1);
  EXPECT_EQ(same.value, 1.0);
  EXPECT_EQ(destructive_swap_estimate(r, g, 500, 9).value, destructive_swap_estimate(r, g, 500, 9).value);
}

TEST(DestructiveSwap, Errors) {
  EXPECT_EQ(code_of([] { destructive_swap_estimate(ket("zero"), ket("zero"), 0, 1); }),
            ErrorCode::kInvalidShots);
  const DensityMatrix q3 = DensityMatrix::maximally_mixed(3);
  EXPECT_EQ(code_of([&] { destructive_swap_estimate(q3, q3, 10, 1); }),
            ErrorCode::kDimensionNotPowerOfTwo);
}

TEST(DestructiveCycle, ConvergesAndImaginaryPartVanishes) {
  const DensityMatrix r = testing::random_mixed_state(2, 4), g = testing::random_mixed_state(2, 5);
  const CycleEstimate est = destructive_cycle_estimate(r, g, 40000, 11);
  EXPECT_EQ(est.real.method, OverlapMethod::kDestructiveCycle);
  EXPECT_LT(std::abs(est.real.value - quartic_oracle(r, g)), 4.0 * est.real.std_error);
  EXPECT_LT(std::abs(est.imag_mean), 4.0 * est.imag_std_error + 1e-12);
}

TEST(SubFidelityEstimate, Examples) {
  const SubFidelityEstimate pure = estimate_subfidelity(ket("zero"), ket("zero"), 2000, 3);
  EXPECT_NEAR(pure.value, 1.0, 1e-12);
  EXPECT_NEAR(pure.first_term_bound, 1.0, 1e-12);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  const SubFidelityEstimate mm = estimate_subfidelity(mixed, mixed, 40000, 4);
  EXPECT_LT(std::abs(mm.value - 1.0), 4.0 * mm.ci);
  EXPECT_EQ(mm.overlap.shots, 40000u);
  EXPECT_EQ(mm.cycle.shots, 40000u);
}

TEST(SubFidelityEstimate, RandomPairsWithinFourErrors) {
  int misses = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityMatrix r = testing::random_mixed_state(2, 100 + s), g = testing::random_mixed_state(2, 200 + s);
    const SubFidelityEstimate est = estimate_subfidelity(r, g, 20000, s);
    const double exact = sub_fidelity(r, g);
    EXPECT_LE(est.first_term_bound, est.value + 1e-12);
    if (std::abs(est.value - exact) > 4.0 * est.ci) ++misses;
  }
  EXPECT_EQ(misses, 0);
}

}  // namespace
}  // namespace qem
