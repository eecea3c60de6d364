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

#include "qem/subfid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "qem/errors.hpp"
#include "qem/random.hpp"

namespace qem {

namespace {

void check_pair(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) fail(ErrorCode::kDimensionMismatch, "states differ in dimension");
}

void check_cap(double dim, const DenseLimits& limits) {
  if (dim > static_cast<double>(limits.max_dim)) {
    fail(ErrorCode::kProductTooLarge, "joint dimension exceeds the dense cap");
  }
}

// Ancilla-0 probability of H, controlled-V, H on |0><0| x state.
double hadamard_test(const Matrix& v, const Matrix& state) {
  const auto reg = v.rows();
  const double s = 1.0 / std::sqrt(2.0);
  Matrix h(2, 2);
  h << s, s, s, -s;
  Matrix cv = Matrix::Zero(2 * reg, 2 * reg);
  cv.topLeftCorner(reg, reg) = Matrix::Identity(reg, reg);
  cv.bottomRightCorner(reg, reg) = v;
  const Matrix h_anc = kron(h, Matrix::Identity(reg, reg));
  Matrix anc0 = Matrix::Zero(2, 2);
  anc0(0, 0) = 1.0;
  const Matrix circuit = h_anc * cv * h_anc;
  const Matrix out = circuit * kron(anc0, state) * circuit.adjoint();
  return out.topLeftCorner(reg, reg).trace().real();
}

void check_paths(const TestProbability& p) {
  if (std::abs(p.closed_form - p.circuit) > kStructuralTol) {
    fail(ErrorCode::kNumericalMismatch, "closed form and circuit disagree");
  }
}

SiteBasis make_bell_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  SiteBasis b;
  b.vectors = Matrix::Zero(4, 4);
  b.vectors(0, 0) = s;
  b.vectors(3, 0) = s;
  b.vectors(0, 1) = s;
  b.vectors(3, 1) = -s;
  b.vectors(1, 2) = s;
  b.vectors(2, 2) = s;
  b.vectors(1, 3) = s;
  b.vectors(2, 3) = -s;
  b.eigenvalues = {1.0, 1.0, 1.0, -1.0};
  return b;
}

SiteBasis make_cycle_basis() {
  constexpr std::size_t kDim = 16;
  // Index map of the shift |x0 x1 x2 x3> -> |x1 x2 x3 x0>.
  auto next = [](std::size_t x) { return ((x << 1) & 0xFu) | (x >> 3); };
  SiteBasis b;
  b.vectors = Matrix::Zero(kDim, kDim);
  std::vector<bool> seen(kDim, false);
  Eigen::Index col = 0;
  for (std::size_t start = 0; start < kDim; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit{start};
    seen[start] = true;
    for (std::size_t x = next(start); x != start; x = next(x)) {
      orbit.push_back(x);
      seen[x] = true;
    }
    const auto size = static_cast<double>(orbit.size());
    for (std::size_t j = 0; j < orbit.size(); ++j) {
      for (std::size_t t = 0; t < orbit.size(); ++t) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(j * t) / size;
        b.vectors(static_cast<Eigen::Index>(orbit[t]), col) = std::polar(1.0 / std::sqrt(size), angle);
      }
      Complex ev = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / size);
      // Snap to the exact fourth root of unity.
      ev = Complex(std::round(ev.real()), std::round(ev.imag()));
      b.eigenvalues.push_back(ev);
      ++col;
    }
  }
  return b;
}

struct SiteSampler {
  std::vector<double> cdf;
  std::vector<Complex> values;
};

// Joint outcome distribution of measuring every site of an interleaved
// state in a fixed site basis.
SiteSampler site_sampler(const Matrix& joint, std::size_t registers, std::size_t qubits,
                         const SiteBasis& basis) {
  std::vector<std::size_t> perm(registers * qubits);
  for (std::size_t r = 0; r < registers; ++r) {
    for (std::size_t j = 0; j < qubits; ++j) perm[r * qubits + j] = registers * j + r;
  }
  const Matrix interleaved = permute_qubits(joint, perm);
  const Matrix u = kron_power(basis.vectors, qubits);
  const Matrix rotated = u.adjoint() * interleaved * u;

  const std::size_t site_dim = basis.eigenvalues.size();
  const auto total = static_cast<std::size_t>(rotated.rows());
  SiteSampler s;
  s.cdf.resize(total);
  s.values.resize(total);
  double acc = 0.0;
  for (std::size_t o = 0; o < total; ++o) {
    acc += std::max(rotated(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(o)).real(), 0.0);
    s.cdf[o] = acc;
    Complex v = 1.0;
    std::size_t rest = o;
    for (std::size_t j = 0; j < qubits; ++j) {
      v *= basis.eigenvalues[rest % site_dim];
      rest /= site_dim;
    }
    s.values[o] = v;
  }
  for (auto& c : s.cdf) c /= acc;
  s.cdf.back() = 1.0;
  return s;
}

struct ShotStats {
  double mean_re = 0.0, se_re = 0.0, mean_im = 0.0, se_im = 0.0;
};

ShotStats run_shots(const SiteSampler& sampler, std::uint64_t shots, std::uint64_t seed) {
  double sum_re = 0.0, sq_re = 0.0, sum_im = 0.0, sq_im = 0.0;
  for (std::uint64_t s = 0; s < shots; ++s) {
    std::mt19937_64 gen = substream(seed, s);
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    const auto it = std::upper_bound(sampler.cdf.begin(), sampler.cdf.end(), u);
    const auto o = std::min<std::size_t>(static_cast<std::size_t>(it - sampler.cdf.begin()),
                                         sampler.cdf.size() - 1);
    const Complex v = sampler.values[o];
    sum_re += v.real();
    sq_re += v.real() * v.real();
    sum_im += v.imag();
    sq_im += v.imag() * v.imag();
  }
  const auto n = static_cast<double>(shots);
  auto se = [n](double sum, double sq) {
    if (n < 2) return 0.0;
    const double var = std::max(sq - sum * sum / n, 0.0) / (n - 1.0);
    return std::sqrt(var / n);
  };
  return {sum_re / n, se(sum_re, sq_re), sum_im / n, se(sum_im, sq_im)};
}

std::size_t checked_qubits(const DensityMatrix& rho, const DensityMatrix& sigma,
                           std::uint64_t shots) {
  check_pair(rho, sigma);
  if (shots < 1) fail(ErrorCode::kInvalidShots, "need at least one shot");
  return qubit_count(rho.dim());
}

}  // namespace

std::string_view overlap_method_name(OverlapMethod m) {
  switch (m) {
    case OverlapMethod::kSwapTest: return "swap_test";
    case OverlapMethod::kDestructiveSwap: return "destructive_swap";
    case OverlapMethod::kCycleTest: return "cycle_test";
    case OverlapMethod::kDestructiveCycle: return "destructive_cycle";
    case OverlapMethod::kExact: return "exact";
  }
  return "unknown";
}

TestProbability swap_test_probability(const DensityMatrix& rho, const DensityMatrix& sigma,
                                      const DenseLimits& limits) {
  check_pair(rho, sigma);
  const std::size_t d = rho.dim();
  check_cap(2.0 * static_cast<double>(d) * static_cast<double>(d), limits);
  TestProbability p;
  p.closed_form = 0.5 * (1.0 + trace_product(rho.matrix(), sigma.matrix()).real());
  p.circuit = hadamard_test(register_cyclic_shift(2, d), kron(rho.matrix(), sigma.matrix()));
  check_paths(p);
  return p;
}

TestProbability cycle_test_probability(const DensityMatrix& rho, const DensityMatrix& sigma,
                                       const DenseLimits& limits) {
  check_pair(rho, sigma);
  const std::size_t d = rho.dim();
  check_cap(2.0 * std::pow(static_cast<double>(d), 4.0), limits);
  const Matrix rs = rho.matrix() * sigma.matrix();
  const double quartic = (rs * rs).trace().real();
  if (quartic < -kRadicandTol) {
    fail(ErrorCode::kNegativeRadicand, "Tr(rho sigma rho sigma) is negative");
  }
  TestProbability p;
  p.closed_form = 0.5 * (1.0 + quartic);
  const Matrix pair = kron(rho.matrix(), sigma.matrix());
  p.circuit = hadamard_test(register_cyclic_shift(4, d), kron(pair, pair));
  check_paths(p);
  return p;
}

const SiteBasis& bell_basis() {
  static const SiteBasis basis = make_bell_basis();
  return basis;
}

const SiteBasis& four_qubit_cycle_basis() {
  static const SiteBasis basis = make_cycle_basis();
  return basis;
}

OverlapEstimate destructive_swap_estimate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                          std::uint64_t shots, std::uint64_t seed,
                                          const DenseLimits& limits) {
  const std::size_t n = checked_qubits(rho, sigma, shots);
  check_cap(std::pow(static_cast<double>(rho.dim()), 2.0), limits);
  const SiteSampler sampler =
      site_sampler(kron(rho.matrix(), sigma.matrix()), 2, n, bell_basis());
  const ShotStats st = run_shots(sampler, shots, seed);
  return {st.mean_re, shots, st.se_re, OverlapMethod::kDestructiveSwap};
}

CycleEstimate destructive_cycle_estimate(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         std::uint64_t shots, std::uint64_t seed,
                                         const DenseLimits& limits) {
  const std::size_t n = checked_qubits(rho, sigma, shots);
  check_cap(std::pow(static_cast<double>(rho.dim()), 4.0), limits);
  const Matrix pair = kron(rho.matrix(), sigma.matrix());
  const SiteSampler sampler = site_sampler(kron(pair, pair), 4, n, four_qubit_cycle_basis());
  const ShotStats st = run_shots(sampler, shots, seed);
  CycleEstimate out;
  out.real = {st.mean_re, shots, st.se_re, OverlapMethod::kDestructiveCycle};
  out.imag_mean = st.mean_im;
  out.imag_std_error = st.se_im;
  return out;
}

SubFidelityEstimate estimate_subfidelity(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         std::uint64_t shots_per_quantity, std::uint64_t seed,
                                         const DenseLimits& limits) {
  SubFidelityEstimate out;
  out.overlap = destructive_swap_estimate(rho, sigma, shots_per_quantity, seed, limits);
  const CycleEstimate cyc =
      destructive_cycle_estimate(rho, sigma, shots_per_quantity, mix_seed(seed) + 1, limits);
  out.cycle = cyc.real;
  out.cycle_imag_mean = cyc.imag_mean;
  out.cycle_imag_std_error = cyc.imag_std_error;

  const double t1 = out.overlap.value;
  const double t2 = out.cycle.value;
  const double se1 = out.overlap.std_error;
  const double se2 = out.cycle.std_error;
  const double radicand = 2.0 * (t1 * t1 - t2);
  const double root = std::sqrt(std::max(radicand, 0.0));
  out.value = t1 + root;
  out.first_term_bound = t1;

  const double se_radicand = 2.0 * std::hypot(2.0 * t1 * se1, se2);
  out.at_boundary = !(radicand > 3.0 * se_radicand);
  if (!out.at_boundary) {
    out.ci = std::hypot((1.0 + 2.0 * t1 / root) * se1, se2 / root);
  } else {
    // Near zero the square root is not differentiable; bound its error by
    // the square root of the radicand's error.
    out.ci = se1 + std::sqrt(se_radicand);
  }
  return out;
}

}  // namespace qem
