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

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <span>

#include "causalkit/errors.hpp"
#include "causalkit/kernels.hpp"

namespace causalkit {

/// Regularization for the kernel independence measure. The contraction
/// R = G (G + n*epsilon*I)^{-1} is well conditioned for epsilon around
/// 1e-3 at n = 100; smaller values sharpen discrimination but risk
/// ill-conditioned solves.
struct NoccoConfig {
  double epsilon = 1e-3;

  void validate() const {
    if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  }
};

/// R = G (G + n*epsilon*I)^{-1} via a symmetric positive-definite solve.
/// Maps each eigenvalue gamma of G to gamma / (gamma + n*epsilon), so the
/// spectrum of R lies in [0, 1).
inline Eigen::MatrixXd regularized_contraction(const GramMatrix& gram,
                                               double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!gram.centered)
    throw ValidationError("regularized contraction expects a centered Gram");
  const Eigen::Index n = gram.entries.rows();
  if (n != gram.entries.cols())
    throw DimensionMismatchError("gram matrix must be square");

  const Eigen::MatrixXd regularized =
      gram.entries + static_cast<double>(n) * epsilon *
                         Eigen::MatrixXd::Identity(n, n);
  const Eigen::LDLT<Eigen::MatrixXd> solver(regularized);
  // solve gives (G + n e I)^{-1} G; both factors are symmetric, so the
  // desired G (G + n e I)^{-1} is its transpose.
  const Eigen::MatrixXd solved = solver.solve(gram.entries);
  const double residual =
      (regularized * solved - gram.entries).cwiseAbs().maxCoeff();
  if (!(residual <= 1e-6))
    throw IllConditionedError(
        "regularized solve residual " + std::to_string(residual) +
        " exceeds 1e-6; epsilon is too small for this Gram matrix");
  return solved.transpose();
}

/// Empirical independence measure Tr[R_y R_x] from two raw Gram matrices;
/// centering and contraction happen here. Zero iff the (embedded) variables
/// look independent, larger when they are dependent.
inline double nocco_from_grams(const GramMatrix& raw_x, const GramMatrix& raw_y,
                               const NoccoConfig& cfg) {
  cfg.validate();
  if (raw_x.entries.rows() != raw_y.entries.rows())
    throw DimensionMismatchError("gram matrices have different sizes");
  const Eigen::MatrixXd r_x =
      regularized_contraction(center_gram(raw_x), cfg.epsilon);
  const Eigen::MatrixXd r_y =
      regularized_contraction(center_gram(raw_y), cfg.epsilon);
  const double trace = r_y.cwiseProduct(r_x.transpose()).sum();
  return std::max(trace, 0.0);
}

/// Convenience overload building both Gram matrices with the given kernel.
/// In shot mode the two series get distinct child seeds derived from
/// kcfg.seed so their sampling noise is independent.
inline double nocco(std::span<const double> x, std::span<const double> y,
                    const KernelConfig& kcfg, const FeatureMapConfig& fcfg,
                    const NoccoConfig& cfg) {
  if (x.size() != y.size())
    throw DimensionMismatchError("series lengths differ");
  if (x.size() < 2)
    throw ValidationError("nocco requires at least two samples");
  KernelConfig kx = kcfg;
  KernelConfig ky = kcfg;
  kx.seed = derive_seed(kcfg.seed, 0, 0);
  ky.seed = derive_seed(kcfg.seed, 1, 0);
  return nocco_from_grams(gram(x, kx, fcfg), gram(y, ky, fcfg), cfg);
}

}  // namespace causalkit
