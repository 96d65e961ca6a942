// SPDX-License-Identifier: Apache-2.0
//
// Dykstra-corrected alternation between the projection onto a constraint set
// and the recentered norm-penalized least-squares step, with certified linear
// convergence for full-rank B, C, plus the multi-set variant that intertwines
// several projections.
#pragma once

#include "mnp/projections.hpp"
#include "mnp/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mnp {

/// Penalty weight sigma_min(B) sigma_min(C) sigma_max(B) sigma_max(C) that
/// maximizes the proven contraction factor; sigma_min ranges over the
/// numerical-rank-supported spectrum.
double optimal_lambda(const Matrix& b, const Matrix& c);

/// Proven per-iteration contraction delta = 1 / (kappa2(B) kappa2(C)); needs
/// B of full column rank and C of full row rank.
double rate_estimate(const Matrix& b, const Matrix& c);

struct IterOptions {
  std::optional<double> lambda;  // default: optimal_lambda(B, C)
  Index max_iters = 0;           // default: 100 * max(X dims)
  double tol_step = 1e-10;       // on ||dX|| + ||dZ|| relative to 1 + ||X||
  bool record_history = false;
  std::optional<Matrix> initial_x;  // default zero (multi-set: seeds W)
  std::optional<Matrix> initial_z;  // default zero
  /// When set, each history row records ||X_k - X*||^2 + ||Z_k - Z*||^2
  /// against this (X*, Z*) pair.
  std::optional<std::pair<Matrix, Matrix>> tracked_reference;
  /// When set, each history row records ||X_k - ref|| / ||ref||; together
  /// with forward_error_target it also stops the run early.
  std::optional<Matrix> forward_error_reference;
  std::optional<double> forward_error_target;
};

enum class Termination { step_tol, max_iters, target_reached };

const char* to_string(Termination t);

struct IterationRecord {
  Index iter = 0;
  double objective = 0.0;
  double step_x = 0.0;         // ||X_k - X_{k+1}||
  double step_z = 0.0;         // ||Z_k - Z_{k+1}|| (all corrections combined)
  double kkt_residual = 0.0;   // || lambda Z_{k+1} - B^T (B X_{k+1} C - A) C^T ||
  double dist_sq = 0.0;        // vs tracked_reference, else NaN
  double forward_error = 0.0;  // vs forward_error_reference, else NaN

  double step_norm() const { return std::sqrt(step_x * step_x + step_z * step_z); }
};

struct ConvergenceReport {
  Matrix x_star;
  Matrix z_star;  // scaled Dykstra correction; lambda * z_star is the gradient certificate
  double objective = 0.0;
  Index iterations = 0;
  double lambda = 0.0;
  std::optional<double> delta_predicted;  // absent when B or C is rank-deficient
  Termination termination = Termination::step_tol;
  double final_step_norm = 0.0;
  double feasibility_gap = 0.0;  // max over sets of ||P_S(x_star) - x_star||
  std::vector<IterationRecord> history;
};

/// Single-set solver; `spec` must carry a non-composite kind (composite
/// kinds route through solve_iterative_multi).
ConvergenceReport solve_iterative(const Matrix& a, const Matrix& b, const Matrix& c,
                                  const ConstraintSpec& spec, const IterOptions& opts = {});

/// Multi-set variant with one Dykstra correction per set; `sets` may mix
/// plain and composite kinds (composites are expanded first).
ConvergenceReport solve_iterative_multi(const Matrix& a, const Matrix& b, const Matrix& c,
                                        const std::vector<ConstraintSpec>& sets,
                                        const IterOptions& opts = {});

}  // namespace mnp
