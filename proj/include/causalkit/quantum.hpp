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

#include <Eigen/Dense>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "causalkit/errors.hpp"
#include "causalkit/rng.hpp"
#include "causalkit/statevector.hpp"

namespace causalkit {

/// Shape of the IQP circuit: Hadamard walls interleaved with `depth`
/// diagonal phase layers (depth + 1 walls in total).
struct IqpCircuitSpec {
  int qubits = 5;
  int depth = 2;

  void validate() const {
    if (qubits < 1) throw ValidationError("qubit count must be >= 1");
    if (depth < 1) throw ValidationError("circuit depth must be >= 1");
  }
};

/// Default circuit for exact simulation.
inline constexpr IqpCircuitSpec kDefaultExactCircuit{5, 2};
/// Smaller circuit used when simulating readout noise.
inline constexpr IqpCircuitSpec kDefaultNoisyCircuit{4, 1};

/// Per-qubit readout bit-flip probabilities, uniform across qubits:
/// p01 = P(read 1 | true 0), p10 = P(read 0 | true 1).
struct ReadoutNoiseModel {
  double p01 = 0.0;
  double p10 = 0.0;

  void validate() const {
    if (p01 < 0.0 || p01 > 0.5 || p10 < 0.0 || p10 > 0.5)
      throw ValidationError("readout flip probabilities must lie in [0, 0.5]");
  }
};

/// Empirical readout response matrix: entry (i, j) estimates
/// P(read outcome i | prepared basis state j). Columns sum to 1.
struct CalibrationMatrix {
  Eigen::MatrixXd response;

  std::size_t dimension() const {
    return static_cast<std::size_t>(response.rows());
  }

  void validate() const {
    if (response.rows() != response.cols() || response.rows() == 0)
      throw DimensionMismatchError("calibration matrix must be square");
    for (Eigen::Index j = 0; j < response.cols(); ++j) {
      if (std::abs(response.col(j).sum() - 1.0) > 1e-9)
        throw ValidationError("calibration column does not sum to 1");
      if (response.col(j).minCoeff() < 0.0 || response.col(j).maxCoeff() > 1.0)
        throw ValidationError("calibration entries must lie in [0, 1]");
    }
  }
};

/// One diagonal circuit layer: a phase gate with `angle` on every qubit,
/// then a controlled phase with the same angle on each neighbouring pair
/// (0,1), (1,2), ..., (q-2,q-1). Diagonal, so amplitude magnitudes never
/// change.
inline void apply_diagonal_layer(Statevector& state, double angle) {
  const int q = state.qubit_count();
  for (int k = 0; k < q; ++k) state.apply_phase(k, angle);
  for (int k = 0; k + 1 < q; ++k)
    state.apply_controlled_phase(k, k + 1, angle);
}

namespace detail {

/// Applies the full IQP gate sequence for a single scalar angle to `state`:
/// a Hadamard wall, then `depth` repetitions of (diagonal layer, Hadamard
/// wall). With a uniform angle the layers commute, so the inverse circuit
/// is this same sequence with the angle negated.
inline void apply_iqp_circuit(Statevector& state, double angle,
                              const IqpCircuitSpec& spec) {
  state.apply_hadamard_all();
  for (int layer = 0; layer < spec.depth; ++layer) {
    apply_diagonal_layer(state, angle);
    state.apply_hadamard_all();
  }
}

}  // namespace detail

/// Prepares the data-encoding state by running the IQP circuit on |0...0>.
inline Statevector build_iqp_state(double angle, const IqpCircuitSpec& spec) {
  spec.validate();
  Statevector state(spec.qubits);
  detail::apply_iqp_circuit(state, angle, spec);
  return state;
}

namespace detail {

/// Runs the inversion-test circuit: the encoding circuit for angle_i
/// followed by the inverse of the encoding circuit for angle_j.
inline Statevector inversion_test_state(double angle_i, double angle_j,
                                        const IqpCircuitSpec& spec) {
  spec.validate();
  Statevector state(spec.qubits);
  apply_iqp_circuit(state, angle_i, spec);
  apply_iqp_circuit(state, -angle_j, spec);
  return state;
}

}  // namespace detail

/// Exact kernel value: probability of reading all zeros after the
/// inversion test, equal to the squared state overlap
/// |<phi(angle_j)|phi(angle_i)>|^2.
inline double kernel_exact(double angle_i, double angle_j,
                           const IqpCircuitSpec& spec) {
  return detail::inversion_test_state(angle_i, angle_j, spec).probability(0);
}

using Histogram = std::vector<std::uint64_t>;

/// Multinomial sampling of measurement outcomes, optionally passing each
/// measured bit through the readout noise channel. Stream layout per shot:
/// one uniform for the outcome draw, then (noise only) one uniform per
/// qubit in index order.
inline Histogram sample_measurement(
    const Statevector& state, std::uint64_t shots, std::uint64_t seed,
    const std::optional<ReadoutNoiseModel>& noise = std::nullopt) {
  if (shots < 1) throw ZeroShotsError("shot count must be >= 1");
  if (noise) noise->validate();

  const std::vector<double> probs = state.probabilities();
  std::vector<double> cumulative(probs.size());
  double running = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    running += probs[i];
    cumulative[i] = running;
  }

  Histogram histogram(probs.size(), 0);
  Rng rng(seed);
  const int q = state.qubit_count();
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.next_double() * running;
    std::size_t outcome =
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(),
                                                  cumulative.end(), u) -
                                 cumulative.begin());
    if (outcome >= probs.size()) outcome = probs.size() - 1;
    if (noise) {
      for (int bit = 0; bit < q; ++bit) {
        const bool is_one = (outcome >> bit) & 1;
        const double flip_prob = is_one ? noise->p10 : noise->p01;
        if (rng.next_double() < flip_prob) outcome ^= std::size_t{1} << bit;
      }
    }
    ++histogram[outcome];
  }
  return histogram;
}

/// Estimates the readout response column by column: each basis state is
/// prepared exactly and measured `shots_per_state` times through the noise
/// channel. With zero flip probabilities this returns the identity.
inline CalibrationMatrix build_calibration_matrix(int qubits,
                                                  const ReadoutNoiseModel& noise,
                                                  std::uint64_t shots_per_state,
                                                  std::uint64_t seed) {
  if (qubits < 1) throw ValidationError("qubit count must be >= 1");
  if (shots_per_state < 1) throw ZeroShotsError("shot count must be >= 1");
  noise.validate();

  const std::size_t dim = std::size_t{1} << qubits;
  CalibrationMatrix cal;
  cal.response = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                       static_cast<Eigen::Index>(dim));
  Statevector state(qubits);
  for (std::size_t prepared = 0; prepared < dim; ++prepared) {
    state.reset_to_basis(prepared);
    const Histogram histogram = sample_measurement(
        state, shots_per_state, derive_seed(seed, prepared, 0), noise);
    for (std::size_t outcome = 0; outcome < dim; ++outcome) {
      cal.response(static_cast<Eigen::Index>(outcome),
                   static_cast<Eigen::Index>(prepared)) =
          static_cast<double>(histogram[outcome]) /
          static_cast<double>(shots_per_state);
    }
  }
  return cal;
}

/// Corrects measured outcome frequencies with the calibration matrix:
/// solves response * p = frequencies by pseudo-inverse, clips negative
/// entries to zero and renormalizes to a probability vector.
inline Eigen::VectorXd mitigate(const Eigen::VectorXd& frequencies,
                                const CalibrationMatrix& cal) {
  if (static_cast<std::size_t>(frequencies.size()) != cal.dimension())
    throw DimensionMismatchError(
        "frequency vector length does not match calibration matrix");
  if (std::abs(frequencies.sum() - 1.0) > 1e-6)
    throw ValidationError("frequencies must sum to 1");

  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(cal.response);
  if (cod.rank() < cal.response.cols())
    throw SingularCalibrationError("calibration matrix is rank-deficient");

  Eigen::VectorXd corrected = cod.solve(frequencies);
  for (Eigen::Index i = 0; i < corrected.size(); ++i)
    corrected[i] = std::max(corrected[i], 0.0);
  const double total = corrected.sum();
  if (!(total > 0.0))
    throw SingularCalibrationError(
        "mitigated distribution collapsed to zero mass");
  return corrected / total;
}

/// Raw measurement histogram of the inversion-test circuit, before any
/// mitigation. kernel_shots post-processes this; it is also exposed for
/// diagnostic dumps.
inline Histogram kernel_shot_histogram(
    double angle_i, double angle_j, const IqpCircuitSpec& spec,
    std::uint64_t shots, std::uint64_t seed,
    const std::optional<ReadoutNoiseModel>& noise = std::nullopt) {
  const Statevector state =
      detail::inversion_test_state(angle_i, angle_j, spec);
  return sample_measurement(state, shots, seed, noise);
}

/// Shot-based kernel estimate via the inversion test: the (optionally
/// mitigated) empirical frequency of the all-zeros outcome, clipped to
/// [0, 1]. Deterministic per seed.
inline double kernel_shots(
    double angle_i, double angle_j, const IqpCircuitSpec& spec,
    std::uint64_t shots, std::uint64_t seed,
    const std::optional<ReadoutNoiseModel>& noise = std::nullopt,
    const CalibrationMatrix* calibration = nullptr) {
  if (shots < 1) throw ZeroShotsError("shot count must be >= 1");
  const std::size_t dim = std::size_t{1} << spec.qubits;
  if (calibration && calibration->dimension() != dim)
    throw DimensionMismatchError(
        "calibration matrix does not match qubit count");

  const Histogram histogram =
      kernel_shot_histogram(angle_i, angle_j, spec, shots, seed, noise);

  Eigen::VectorXd frequencies(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    frequencies[static_cast<Eigen::Index>(i)] =
        static_cast<double>(histogram[i]) / static_cast<double>(shots);

  double estimate;
  if (calibration) {
    estimate = mitigate(frequencies, *calibration)[0];
  } else {
    estimate = frequencies[0];
  }
  return std::clamp(estimate, 0.0, 1.0);
}

}  // namespace causalkit
