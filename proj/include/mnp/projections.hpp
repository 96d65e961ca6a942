// SPDX-License-Identifier: Apache-2.0
//
// Closed-form nearest-point maps (Frobenius norm) onto the constraint sets
// handled by the iterative solver, plus the tagged constraint description
// shared across the library.
#pragma once

#include "mnp/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mnp {

enum class ConstraintKind {
  toeplitz,
  hankel,
  circulant,
  symmetric,
  skew_symmetric,
  nonnegative,
  psd,
  row_sum_one,   // each row sums to one
  col_sum_one,   // each column sums to one
  unit_diagonal, // symmetric with unit diagonal
  eigenvector,   // symmetric with a prescribed eigenvector
  stochastic,        // row_sum_one  &  nonnegative
  doubly_stochastic, // row_sum_one  &  col_sum_one  &  nonnegative
  correlation,       // unit_diagonal  &  psd
};

bool is_composite(ConstraintKind kind);
const char* to_string(ConstraintKind kind);
ConstraintKind constraint_kind_from_string(const std::string& name);

/// Tagged description of a feasible set; composite kinds expand to the list
/// of constituent sets they intersect.
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::nonnegative;
  std::optional<Vector> eigvec;  // required for ConstraintKind::eigenvector

  std::vector<ConstraintSpec> expand() const;
};

/// Diagonal-, antidiagonal-, or cyclic-class averaging.
Matrix project_structured(const Matrix& a, ConstraintKind kind);

/// Entrywise clipping (nonnegative) or eigenvalue clipping after
/// symmetrization (psd).
Matrix project_cone(const Matrix& a, ConstraintKind kind);

/// Affine maps: row/column sum normalization, unit diagonal (inside the
/// symmetric subspace), symmetric and skew-symmetric parts.
Matrix project_affine(const Matrix& a, ConstraintKind kind);

/// Nearest symmetric matrix having v as an eigenvector (any eigenvalue).
Matrix project_eigvec(const Matrix& a, const Vector& v);

/// Dispatch on a non-composite kind.
Matrix project(const Matrix& a, const ConstraintSpec& spec);

/// Plain Dykstra alternating projections onto an intersection of closed
/// convex sets; utility path for composite kinds used standalone.
Matrix project_intersection(const Matrix& a, const std::vector<ConstraintSpec>& sets,
                            double tol = 1e-12, int max_iters = 20000);

}  // namespace mnp
