// SPDX-License-Identifier: Apache-2.0
//
// Brute-force reference solvers.  These deliberately take the naive
// vectorized route (Kronecker least squares, projected gradient, alternating
// factors) so that their answers share no code path with the production
// solvers they check.
#pragma once

#include "mnp/projections.hpp"
#include "mnp/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mnp {

struct OracleResult {
  Matrix x;
  double objective = 0.0;
  std::string method;
  Index iterations = 0;
  double grad_map_norm = 0.0;  // projected-gradient stationarity measure
};

/// Affine parameterization X = offset + sum_i coords_i * basis_i.
struct LinearParameterization {
  Matrix offset;
  std::vector<Matrix> basis;
};

/// Named parameterizations over square n x n unknowns (symmetric, skew,
/// toeplitz, hankel, circulant, row-sum-one, col-sum-one, unit-diagonal)
/// and "full" over p x q.
LinearParameterization make_parameterization(const std::string& name, Index p, Index q);

/// Kronecker product (row-major blocks of a scaled by b).
Matrix kron(const Matrix& a, const Matrix& b);

/// Exact constrained least squares min ||A - B X C|| over an affine family,
/// solved through the vectorized normal operator's pseudoinverse.
OracleResult oracle_kron_ls(const Matrix& a, const Matrix& b, const Matrix& c,
                            const LinearParameterization& param);

/// Equality-constrained vectorized least squares for F X G = H via the KKT
/// system.
OracleResult oracle_two_sided_kkt(const Matrix& a, const Matrix& b, const Matrix& c,
                                  const Matrix& f, const Matrix& g, const Matrix& h);

using Projector = std::function<Matrix(const Matrix&)>;

Projector make_set_projector(const ConstraintSpec& spec);
Projector make_ball_projector(double rho, const Matrix& center);

/// Projected gradient on ||A - B X C||^2; step_size <= 0 picks the safe
/// inverse-Lipschitz default.  Throws DivergenceError if the objective rises
/// for 100 consecutive steps.
OracleResult oracle_projected_gradient(const Matrix& a, const Matrix& b, const Matrix& c,
                                       const Projector& project_onto, Index steps,
                                       double step_size = 0.0);

/// Alternating minimization over rank-r factor pairs U V^T with random
/// restarts; an independent upper bound for the rank-constrained solver.
OracleResult oracle_rank_alternating(const Matrix& a, const Matrix& b, const Matrix& c, Index r,
                                     int restarts, int sweeps, std::uint64_t seed);

/// Gradient descent with per-step snapping onto {X : lam is an eigenvalue},
/// random restarts; an upper bound for the prescribed-eigenvalue solver.
OracleResult oracle_prescribed_eigenvalue(const Matrix& a, const Matrix& b, const Matrix& c,
                                          double lam, int restarts, Index steps,
                                          std::uint64_t seed);

}  // namespace mnp
