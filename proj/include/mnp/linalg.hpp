// SPDX-License-Identifier: Apache-2.0
//
// Dense factorizations used by every solver: SVD with a numerical-rank cut,
// symmetric eigendecomposition, orthogonal extension of a vector, and the
// Paige--Saunders generalized SVD of a matrix pair.
#pragma once

#include "mnp/types.hpp"

#include <utility>

namespace mnp {

/// Default relative threshold for numerical-rank decisions:
/// sigma_i counts toward the rank iff sigma_i > tol * sigma_1 * max(rows, cols).
inline constexpr double kDefaultRankTol = 2.220446049250313e-16;  // machine epsilon

struct SvdFactors {
  Matrix u;                // m x m orthogonal
  Vector singular_values;  // min(m, n), nonincreasing, nonnegative
  Matrix v;                // n x n orthogonal
  Index numerical_rank = 0;

  /// Positive singular values supported by the numerical rank.
  Vector supported() const { return singular_values.head(numerical_rank); }
};

/// Full SVD A = U diag(sigma) V^T with all factors square.
SvdFactors svd(const Matrix& a, double rank_tol = kDefaultRankTol);

/// Factors of the generalized SVD of a pair (B, C) with B (m x n), C (n x p):
///
///   U^T B Q = Sigma_B [W^T R  0],   V^T C^T Q = Sigma_C [W^T R  0],
///
/// where Sigma_B = blkdiag(I_r, diag(beta), O) is m x k,
///       Sigma_C = blkdiag(O, diag(gamma), I_{k-r-s}) is p x k,
/// k = rank([B; C^T]), R is k x k nonsingular with the nonzero singular
/// values of the stacked pair, and beta_i^2 + gamma_i^2 = 1 on the shared
/// middle block.  The derived n x n change of basis
/// M = Q blkdiag(R^{-1} W, I) turns the identities into
/// U^T B M = [Sigma_B 0] and V^T C^T M = [Sigma_C 0].
struct GsvdFactors {
  Matrix u;      // m x m orthogonal
  Matrix v;      // p x p orthogonal
  Matrix w;      // k x k orthogonal
  Matrix q;      // n x n orthogonal
  Matrix r;      // k x k nonsingular
  Vector beta;   // s entries, nonincreasing in (0, 1)
  Vector gamma;  // s entries, nondecreasing in (0, 1)
  Index r_size = 0;  // rows of the leading identity block of Sigma_B
  Index s_size = 0;  // shared middle block
  Index k = 0;       // rank of [B; C^T]
  Matrix m;          // n x n change of basis

  Matrix sigma_b(Index rows_b) const;  // assembles the m x k Sigma_B
  Matrix sigma_c(Index rows_c) const;  // assembles the p x k Sigma_C
};

GsvdFactors gsvd(const Matrix& b, const Matrix& c, double rank_tol = kDefaultRankTol);

/// Orthogonal n x n matrix whose first column is v / ||v||.
Matrix extend_to_orthogonal(const Vector& v);

/// Symmetric eigendecomposition (A + A^T)/2 = V diag(lambda) V^T.
/// Eigenvalues ascend (the solver's native order).
std::pair<Matrix, Vector> symmetric_eig(const Matrix& a);

}  // namespace mnp
