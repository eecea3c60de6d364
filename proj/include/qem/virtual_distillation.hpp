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

#ifndef QEM_VIRTUAL_DISTILLATION_HPP_
#define QEM_VIRTUAL_DISTILLATION_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qem/channel.hpp"
#include "qem/linalg.hpp"
#include "qem/mitigation.hpp"
#include "qem/state.hpp"
#include "qem/tolerances.hpp"

namespace qem {

// Noisy output lambda |e_0><e_0| + sum_k rest_k |e_k><e_k| around the ideal
// pure state e_0.
class SpectralModel {
 public:
  // eigenbasis columns are e_0, e_1, ...; rest has d - 1 entries. Throws
  // DominantEigenvalueTooSmall (lambda <= 1/2), NotUnitTrace, NotPositive,
  // NotUnitary, DimensionMismatch.
  static SpectralModel make(double lambda, std::vector<double> rest, const Matrix& eigenbasis);
  // Completes ideal_ket to an orthonormal basis.
  static SpectralModel around(const Vector& ideal_ket, double lambda, std::vector<double> rest);
  // Remaining weight spread uniformly over the orthogonal complement.
  static SpectralModel uniform(const Vector& ideal_ket, double lambda);

  double lambda() const { return lambda_; }
  const std::vector<double>& rest() const { return rest_; }
  const Matrix& eigenbasis() const { return basis_; }
  std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }

  DensityMatrix ideal_state() const;
  DensityMatrix noisy_state() const;
  // A channel taking the ideal state to the noisy one: d-dimensional
  // depolarizing when the rest is uniform, otherwise a mixture of powers of
  // the cyclic shift of the eigenbasis.
  QuantumChannel channel() const;

  // sum_k (rest_k / lambda)^Q / 2.
  double bias_bound(std::size_t copies) const;

 private:
  SpectralModel(double lambda, std::vector<double> rest, Matrix basis)
      : lambda_(lambda), rest_(std::move(rest)), basis_(std::move(basis)) {}
  double lambda_;
  std::vector<double> rest_;
  Matrix basis_;
};

struct VdProbability {
  double closed_form = 0.0;  // (1 + Tr[W rho^Q]) / 2
  double circuit = 0.0;      // ancilla-0 probability of the controlled-shift circuit
};

// Throws NotInvolution, InvalidArgument (Q < 2), NumericalMismatch when the
// two paths differ by more than 1e-9, ProductTooLarge.
VdProbability vd_outcome_probability(const DensityMatrix& rho, const Matrix& w, std::size_t copies,
                                     const DenseLimits& limits = {});

struct VirtualDistillationSpec {
  MitigationProtocolSpec spec;
  double bias_bound = 0.0;
  double spread_for_observable = 0.0;  // 2 lambda^{-Q} sum |c_i|
  double single_pauli_witness = 0.0;   // lambda^{-Q}
  double best_found_spread = 0.0;      // lower estimate of the max over A
  std::string best_found_method;
};

struct SpreadSearch {
  std::size_t samples = 256;
  std::uint64_t seed = 0;
};

// Largest 2 sum |c_i| found over normalized observables on n qubits: the
// single-Pauli witness, all-sign Pauli sums (n <= 2) and random Hermitian
// samples. Not claimed optimal.
struct SpreadSearchResult {
  double best_coefficient_sum = 0.0;
  std::string method;
};
SpreadSearchResult search_pauli_weight(std::size_t qubits, const SpreadSearch& search);

// (Q, 1) protocol: pick Pauli term i with probability |c_i| / sum |c|,
// measure the ancilla of the controlled-(P_i shift) circuit, output
// +/- gamma sgn(c_i) lambda^{-Q}. Outcome index = 2 i + b.
VirtualDistillationSpec vd_spec(const SpectralModel& model, std::size_t copies,
                                const Observable& a, const SpreadSearch& search = {});

}  // namespace qem

#endif  // QEM_VIRTUAL_DISTILLATION_HPP_
