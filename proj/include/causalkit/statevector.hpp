// Copyright 2026 The causalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "causalkit/errors.hpp"

namespace causalkit {

/// Dense statevector over `qubit_count` qubits.
///
/// Qubit k corresponds to bit k of the basis index (little-endian), so
/// basis index 0b110 has qubit 0 in |0> and qubits 1, 2 in |1>. Gates
/// mutate the private amplitude buffer in place; every kernel evaluation
/// owns its statevector, which makes evaluations independent and safe to
/// run in parallel.
class Statevector {
 public:
  explicit Statevector(int qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count < 1) throw ValidationError("qubit count must be >= 1");
    if (qubit_count > 28)
      throw ValidationError("qubit count too large for a dense statevector");
    amplitudes_.assign(std::size_t{1} << qubit_count, {0.0, 0.0});
    amplitudes_[0] = {1.0, 0.0};
  }

  int qubit_count() const { return qubit_count_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  std::complex<double> amplitude(std::size_t basis_index) const {
    return amplitudes_[basis_index];
  }
  std::span<const std::complex<double>> amplitudes() const {
    return amplitudes_;
  }

  /// Resets to the computational basis state |basis_index>.
  void reset_to_basis(std::size_t basis_index) {
    if (basis_index >= dimension())
      throw ValidationError("basis index out of range");
    std::fill(amplitudes_.begin(), amplitudes_.end(),
              std::complex<double>{0.0, 0.0});
    amplitudes_[basis_index] = {1.0, 0.0};
  }

  void apply_hadamard(int qubit) {
    check_qubit(qubit);
    const std::size_t stride = std::size_t{1} << qubit;
    constexpr double kInvSqrt2 = 0.70710678118654752440;
    for (std::size_t base = 0; base < dimension(); base += 2 * stride) {
      for (std::size_t offset = 0; offset < stride; ++offset) {
        const std::size_t zero = base + offset;
        const std::size_t one = zero + stride;
        const std::complex<double> a = amplitudes_[zero];
        const std::complex<double> b = amplitudes_[one];
        amplitudes_[zero] = (a + b) * kInvSqrt2;
        amplitudes_[one] = (a - b) * kInvSqrt2;
      }
    }
  }

  void apply_hadamard_all() {
    for (int q = 0; q < qubit_count_; ++q) apply_hadamard(q);
  }

  /// Phase gate diag(1, e^{i*angle}) on one qubit.
  void apply_phase(int qubit, double angle) {
    check_qubit(qubit);
    const std::complex<double> phase = std::polar(1.0, angle);
    const std::size_t mask = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < dimension(); ++i) {
      if (i & mask) amplitudes_[i] *= phase;
    }
  }

  /// Controlled phase: multiplies |11> components of the qubit pair by
  /// e^{i*angle}. Symmetric in the two qubits.
  void apply_controlled_phase(int qubit_a, int qubit_b, double angle) {
    check_qubit(qubit_a);
    check_qubit(qubit_b);
    if (qubit_a == qubit_b)
      throw ValidationError("controlled phase needs two distinct qubits");
    const std::complex<double> phase = std::polar(1.0, angle);
    const std::size_t mask =
        (std::size_t{1} << qubit_a) | (std::size_t{1} << qubit_b);
    for (std::size_t i = 0; i < dimension(); ++i) {
      if ((i & mask) == mask) amplitudes_[i] *= phase;
    }
  }

  double norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
  }

  double probability(std::size_t basis_index) const {
    return std::norm(amplitudes_[basis_index]);
  }

  std::vector<double> probabilities() const {
    std::vector<double> probs(dimension());
    for (std::size_t i = 0; i < dimension(); ++i)
      probs[i] = std::norm(amplitudes_[i]);
    return probs;
  }

  /// |<other|this>|^2.
  double fidelity(const Statevector& other) const {
    if (other.dimension() != dimension())
      throw DimensionMismatchError("statevector dimensions differ");
    std::complex<double> inner{0.0, 0.0};
    for (std::size_t i = 0; i < dimension(); ++i)
      inner += std::conj(other.amplitudes_[i]) * amplitudes_[i];
    return std::norm(inner);
  }

 private:
  void check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= qubit_count_)
      throw ValidationError("qubit index out of range");
  }

  int qubit_count_;
  std::vector<std::complex<double>> amplitudes_;
};

}  // namespace causalkit
