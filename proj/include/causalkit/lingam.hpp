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
#include <Eigen/LU>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "causalkit/dataset.hpp"
#include "causalkit/errors.hpp"
#include "causalkit/independence.hpp"
#include "causalkit/kernels.hpp"

namespace causalkit {

/// All tunables of a discovery run. `master_seed` drives every
/// shot-sampled kernel evaluation through per-evaluation derived seeds;
/// exact-mode runs ignore it.
struct DiscoveryConfig {
  KernelConfig kernel;
  FeatureMapConfig feature_map;
  NoccoConfig nocco;
  double prune_threshold = 0.1;
  std::uint64_t master_seed = 0;

  void validate() const {
    if (prune_threshold < 0.0)
      throw ValidationError("prune threshold must be >= 0");
    nocco.validate();
    feature_map.validate();
  }
};

struct ScoreEntry {
  int variable;
  double score;
};

/// Candidate scores of one search round plus the index that won.
struct RoundTrace {
  std::vector<ScoreEntry> scores;
  int chosen;
};

/// Result of a discovery run: causal ordering, connection strengths (raw
/// and standardized scale), pruned adjacency and the full score trace.
/// adjacency[i][j] means an edge j -> i, matching strengths(i, j).
struct CausalModel {
  std::vector<std::string> variables;
  std::vector<int> ordering;
  Eigen::MatrixXd strengths;
  Eigen::MatrixXd strengths_standardized;
  std::vector<std::vector<bool>> adjacency;
  std::vector<RoundTrace> trace;
};

/// Simple-regression residual of `target` on `regressor` using population
/// moments: r = target - (cov/var) * regressor. The residual has zero
/// covariance with the regressor.
inline std::vector<double> regress_residual(std::span<const double> target,
                                            std::span<const double> regressor) {
  if (target.size() != regressor.size())
    throw DimensionMismatchError("series lengths differ");
  const double var = variance_pop(regressor);
  if (!(var > 0.0))
    throw ConstantRegressorError("regressor has zero variance");
  const double slope = covariance_pop(target, regressor) / var;
  std::vector<double> residual(target.size());
  for (std::size_t s = 0; s < target.size(); ++s)
    residual[s] = target[s] - slope * regressor[s];
  return residual;
}

namespace detail {

inline KernelConfig seeded_kernel(const DiscoveryConfig& cfg, int j, int i) {
  KernelConfig k = cfg.kernel;
  k.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(j),
                       static_cast<std::uint64_t>(i));
  return k;
}

}  // namespace detail

/// Total dependence of candidate root x_j on the active set: the sum of
/// the independence measure between x_j and each residual r_i^(j). The
/// true root minimizes this score.
inline double total_independence_score(
    int j, const std::vector<int>& active,
    const std::vector<std::vector<double>>& data,
    const DiscoveryConfig& cfg) {
  if (active.size() < 2)
    throw ValidationError("active set must contain at least two variables");
  double total = 0.0;
  for (const int i : active) {
    if (i == j) continue;
    const std::vector<double> residual =
        regress_residual(data[static_cast<std::size_t>(i)],
                         data[static_cast<std::size_t>(j)]);
    total += nocco(data[static_cast<std::size_t>(j)], residual,
                   detail::seeded_kernel(cfg, j, i), cfg.feature_map,
                   cfg.nocco);
  }
  return total;
}

struct OrderingResult {
  std::vector<int> ordering;
  std::vector<RoundTrace> trace;
};

/// Iterative root search: each round scores every remaining variable,
/// appends the argmin (ties break to the lowest index) and replaces the
/// other variables by their residuals against the chosen root.
inline OrderingResult causal_order_with_trace(const DataMatrix& dm,
                                              const DiscoveryConfig& cfg) {
  cfg.validate();
  const int p = static_cast<int>(dm.p());
  if (p < 2) throw ValidationError("discovery needs at least two variables");

  std::vector<std::vector<double>> working = dm.values;
  std::vector<int> active(static_cast<std::size_t>(p));
  std::iota(active.begin(), active.end(), 0);

  OrderingResult result;
  for (int round = 0; round + 1 < p; ++round) {
    RoundTrace trace;
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (const int j : active) {
      double score;
      const std::string context = "round " + std::to_string(round + 1) +
                                  ", candidate '" +
                                  dm.names[static_cast<std::size_t>(j)] +
                                  "': ";
      try {
        score = total_independence_score(j, active, working, cfg);
      } catch (const DataError& e) {
        throw DataError(context + e.what());
      } catch (const NumericalError& e) {
        throw NumericalError(context + e.what());
      } catch (const ValidationError& e) {
        throw ValidationError(context + e.what());
      }
      trace.scores.push_back({j, score});
      if (score < best_score) {
        best_score = score;
        best = j;
      }
    }
    trace.chosen = best;
    result.trace.push_back(std::move(trace));
    result.ordering.push_back(best);

    for (const int i : active) {
      if (i == best) continue;
      working[static_cast<std::size_t>(i)] =
          regress_residual(working[static_cast<std::size_t>(i)],
                           working[static_cast<std::size_t>(best)]);
    }
    active.erase(std::find(active.begin(), active.end(), best));
  }
  result.ordering.push_back(active.front());
  return result;
}

inline std::vector<int> causal_order(const DataMatrix& dm,
                                     const DiscoveryConfig& cfg) {
  return causal_order_with_trace(dm, cfg).ordering;
}

/// Connection strengths by multivariate least squares on the original
/// data: each variable is regressed on all of its predecessors in the
/// ordering via the normal equations. Rows of non-predecessors stay zero.
inline Eigen::MatrixXd estimate_strengths(const DataMatrix& dm,
                                          const std::vector<int>& ordering) {
  const int p = static_cast<int>(dm.p());
  const Eigen::Index n = static_cast<Eigen::Index>(dm.n());
  if (static_cast<int>(ordering.size()) != p)
    throw ValidationError("ordering length does not match variable count");

  // Centered copies; slopes of centered OLS equal slopes with intercept.
  Eigen::MatrixXd centered(n, p);
  for (int v = 0; v < p; ++v) {
    const double m = mean(dm.values[static_cast<std::size_t>(v)]);
    for (Eigen::Index s = 0; s < n; ++s)
      centered(s, v) = dm.values[static_cast<std::size_t>(v)]
                                [static_cast<std::size_t>(s)] - m;
  }

  Eigen::MatrixXd strengths = Eigen::MatrixXd::Zero(p, p);
  for (int position = 1; position < p; ++position) {
    const int target = ordering[static_cast<std::size_t>(position)];
    Eigen::MatrixXd design(n, position);
    for (int k = 0; k < position; ++k)
      design.col(k) = centered.col(ordering[static_cast<std::size_t>(k)]);

    const Eigen::MatrixXd gram = design.transpose() * design;
    const Eigen::VectorXd rhs = design.transpose() * centered.col(target);
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
    if (!lu.isInvertible())
      throw SingularDesignError("collinear predecessors for variable '" +
                                dm.names[static_cast<std::size_t>(target)] +
                                "'");
    const Eigen::VectorXd beta = lu.solve(rhs);
    for (int k = 0; k < position; ++k)
      strengths(target, ordering[static_cast<std::size_t>(k)]) = beta[k];
  }
  return strengths;
}

/// Rescales strengths to the standardized scale:
/// B_std(i, j) = B(i, j) * sigma_j / sigma_i with population sigmas.
inline Eigen::MatrixXd standardized_strengths(const DataMatrix& dm,
                                              const Eigen::MatrixXd& strengths) {
  const int p = static_cast<int>(dm.p());
  std::vector<double> sigma(static_cast<std::size_t>(p));
  for (int v = 0; v < p; ++v)
    sigma[static_cast<std::size_t>(v)] =
        stddev_pop(dm.values[static_cast<std::size_t>(v)]);
  Eigen::MatrixXd standardized = strengths;
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      standardized(i, j) = strengths(i, j) *
                           sigma[static_cast<std::size_t>(j)] /
                           sigma[static_cast<std::size_t>(i)];
    }
  }
  return standardized;
}

/// Thresholds edges on the standardized scale: edge j -> i survives iff
/// B(i, j) is nonzero and |B_std(i, j)| >= threshold. threshold = 0 keeps
/// the full support of B.
inline std::vector<std::vector<bool>> prune(const Eigen::MatrixXd& strengths,
                                            const DataMatrix& dm,
                                            double threshold) {
  if (threshold < 0.0) throw ValidationError("prune threshold must be >= 0");
  const Eigen::MatrixXd standardized = standardized_strengths(dm, strengths);
  const int p = static_cast<int>(strengths.rows());
  std::vector<std::vector<bool>> adjacency(
      static_cast<std::size_t>(p),
      std::vector<bool>(static_cast<std::size_t>(p), false));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      if (i == j) continue;
      adjacency[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          strengths(i, j) != 0.0 &&
          std::abs(standardized(i, j)) >= threshold;
    }
  }
  return adjacency;
}

/// Full pipeline: ordering search, strength estimation, pruning. The
/// input must be prepared (finite values, no constant variables).
inline CausalModel discover(const DataMatrix& dm, const DiscoveryConfig& cfg) {
  cfg.validate();
  if (dm.p() < 2) throw ValidationError("discovery needs at least two variables");
  if (dm.n() < 2) throw ValidationError("discovery needs at least two samples");
  for (std::size_t v = 0; v < dm.p(); ++v) {
    if (is_constant(dm.values[v]))
      throw ConstantSeriesError("variable '" + dm.names[v] + "' is constant");
  }

  CausalModel model;
  model.variables = dm.names;
  OrderingResult order = causal_order_with_trace(dm, cfg);
  model.ordering = std::move(order.ordering);
  model.trace = std::move(order.trace);
  model.strengths = estimate_strengths(dm, model.ordering);
  model.strengths_standardized = standardized_strengths(dm, model.strengths);
  model.adjacency = prune(model.strengths, dm, cfg.prune_threshold);
  return model;
}

/// Exact, direction-sensitive comparison of the pruned adjacency against a
/// reference edge set.
inline bool structure_equal(const CausalModel& model,
                            const std::vector<std::vector<bool>>& reference) {
  if (model.adjacency.size() != reference.size())
    throw DimensionMismatchError("adjacency sizes differ");
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (model.adjacency[i].size() != reference[i].size())
      throw DimensionMismatchError("adjacency sizes differ");
    if (model.adjacency[i] != reference[i]) return false;
  }
  return true;
}

}  // namespace causalkit
