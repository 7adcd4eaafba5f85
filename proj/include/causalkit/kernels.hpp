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
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "causalkit/errors.hpp"
#include "causalkit/quantum.hpp"
#include "causalkit/stats.hpp"

namespace causalkit {

/// Feature map turning a standardized value into a gate phase:
/// tanh-shrink applied to the scaled value, scale * v - tanh(scale * v).
struct FeatureMapConfig {
  double scale = 2.0;

  void validate() const {
    if (!(scale > 0.0)) throw ValidationError("feature map scale must be > 0");
  }
};

inline double feature_map(double value, const FeatureMapConfig& cfg) {
  cfg.validate();
  const double scaled = cfg.scale * value;
  return scaled - std::tanh(scaled);
}

enum class KernelKind { quantum, gaussian };
enum class KernelMode { exact, shots };

/// Everything needed to evaluate one kernel over a series. Only the
/// parameters of the active `kind` are consulted; `bandwidth` empty means
/// the median heuristic.
struct KernelConfig {
  KernelKind kind = KernelKind::quantum;
  IqpCircuitSpec circuit = kDefaultExactCircuit;
  std::optional<double> bandwidth;
  KernelMode mode = KernelMode::exact;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  std::optional<ReadoutNoiseModel> noise;
  std::optional<CalibrationMatrix> calibration;
};

/// n x n kernel similarity matrix; `centered` records whether the matrix
/// has been conjugated by the centering projector.
struct GramMatrix {
  Eigen::MatrixXd entries;
  bool centered = false;

  std::size_t n() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Median of the pairwise absolute differences |x_i - x_j| over i < j,
/// with a fallback of 1.0 when the median is zero.
inline double median_heuristic(std::span<const double> series) {
  if (series.size() < 2)
    throw ValidationError("median heuristic requires at least two samples");
  std::vector<double> distances;
  distances.reserve(series.size() * (series.size() - 1) / 2);
  for (std::size_t i = 0; i < series.size(); ++i) {
    for (std::size_t j = i + 1; j < series.size(); ++j)
      distances.push_back(std::abs(series[i] - series[j]));
  }
  std::sort(distances.begin(), distances.end());
  const std::size_t m = distances.size();
  const double median = (m % 2 == 1)
                            ? distances[m / 2]
                            : 0.5 * (distances[m / 2 - 1] + distances[m / 2]);
  return median == 0.0 ? 1.0 : median;
}

/// Standardization with a degenerate guard: a constant series maps to all
/// zeros instead of failing, which sends every pairwise separation to zero
/// and yields an all-ones Gram for both kernel kinds.
inline std::vector<double> standardize_or_zero(std::span<const double> series) {
  if (is_constant(series)) return std::vector<double>(series.size(), 0.0);
  const double m = mean(series);
  const double sd = stddev_pop(series);
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = (series[i] - m) / sd;
  return out;
}

/// Raw Gram matrix of a scalar series. The series is standardized first
/// for both kernel kinds. Entries are computed once per unordered pair and
/// mirrored, so the result is exactly symmetric even in shot mode; shot
/// mode gives entry (i, j) its own seed derived from (kcfg.seed, i, j).
inline GramMatrix gram(std::span<const double> series, const KernelConfig& kcfg,
                       const FeatureMapConfig& fcfg) {
  const std::size_t n = series.size();
  if (n < 2) throw ValidationError("gram requires at least two samples");
  fcfg.validate();

  const std::vector<double> standardized = standardize_or_zero(series);
  GramMatrix result;
  result.entries.resize(static_cast<Eigen::Index>(n),
                        static_cast<Eigen::Index>(n));
  result.centered = false;

  if (kcfg.kind == KernelKind::gaussian) {
    if (kcfg.bandwidth && !(*kcfg.bandwidth > 0.0))
      throw ValidationError("gaussian bandwidth must be > 0");
    const double sigma =
        kcfg.bandwidth ? *kcfg.bandwidth : median_heuristic(standardized);
    const double inv_two_sigma_sq = 1.0 / (2.0 * sigma * sigma);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double d = standardized[i] - standardized[j];
        const double value = std::exp(-d * d * inv_two_sigma_sq);
        result.entries(static_cast<Eigen::Index>(i),
                       static_cast<Eigen::Index>(j)) = value;
        result.entries(static_cast<Eigen::Index>(j),
                       static_cast<Eigen::Index>(i)) = value;
      }
    }
    return result;
  }

  kcfg.circuit.validate();
  if (kcfg.calibration) {
    kcfg.calibration->validate();
    if (kcfg.calibration->dimension() !=
        (std::size_t{1} << kcfg.circuit.qubits))
      throw DimensionMismatchError(
          "calibration matrix does not match qubit count");
  }

  std::vector<double> angles(n);
  for (std::size_t i = 0; i < n; ++i)
    angles[i] = feature_map(standardized[i], fcfg);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double value;
      if (kcfg.mode == KernelMode::exact) {
        value = kernel_exact(angles[i], angles[j], kcfg.circuit);
      } else {
        value = kernel_shots(
            angles[i], angles[j], kcfg.circuit, kcfg.shots,
            derive_seed(kcfg.seed, i, j), kcfg.noise,
            kcfg.calibration ? &*kcfg.calibration : nullptr);
      }
      result.entries(static_cast<Eigen::Index>(i),
                     static_cast<Eigen::Index>(j)) = value;
      result.entries(static_cast<Eigen::Index>(j),
                     static_cast<Eigen::Index>(i)) = value;
    }
  }
  return result;
}

/// Conjugates by the centering projector H = I - J/n, i.e.
/// G = H K H. Every row and column of the result sums to zero; centering
/// twice changes nothing.
inline GramMatrix center_gram(const GramMatrix& raw) {
  const Eigen::Index n = raw.entries.rows();
  if (n != raw.entries.cols())
    throw DimensionMismatchError("gram matrix must be square");
  const Eigen::VectorXd row_means =
      raw.entries.rowwise().mean();
  const Eigen::VectorXd col_means = raw.entries.colwise().mean().transpose();
  const double total_mean = raw.entries.mean();

  GramMatrix centered;
  centered.centered = true;
  centered.entries =
      raw.entries - row_means.replicate(1, n) -
      col_means.transpose().replicate(n, 1) +
      Eigen::MatrixXd::Constant(n, n, total_mean);
  return centered;
}

/// Smallest eigenvalue; nonnegative (up to tolerance) for a valid kernel
/// Gram matrix.
inline double min_eigenvalue(const GramMatrix& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      g.entries, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace causalkit
