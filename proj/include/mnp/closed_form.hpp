// SPDX-License-Identifier: Apache-2.0
//
// Closed-form global minimizers of ||A - B X C|| (Frobenius) under rank,
// prescribed-eigenvalue, norm-ball, two-sided-product, symmetric, and
// skew-symmetric constraints on X.
#pragma once

#include "mnp/linalg.hpp"
#include "mnp/types.hpp"

#include <optional>
#include <vector>

namespace mnp {

/// Change of frame splitting ||A - BXC||^2 into
/// ||A11 - S_B X11 S_C||^2 + ||A12||^2 + ||A21||^2 + ||A22||^2,
/// where S_B, S_C carry the positive singular values of B and C and X11 is
/// the only block of V_B^T X U_C that the objective sees.
struct FrameReduction {
  SvdFactors svd_b;
  SvdFactors svd_c;
  Matrix a_tilde;  // U_B^T A V_C
  Matrix a11;      // leading rank(B) x rank(C) block of a_tilde
  Vector s_b;      // positive singular values of B
  Vector s_c;      // positive singular values of C
  Matrix sigma;    // outer-product grid sigma_ij = s_b(i) * s_c(j)

  /// V_B [x11 0; 0 0] U_C^T, the minimum-norm lift of a reduced block.
  Matrix embed(const Matrix& x11) const;
};

FrameReduction frame_reduce(const Matrix& a, const Matrix& b, const Matrix& c);

/// Two-sided product constraint F X G = H.
struct TwoSidedConstraint {
  Matrix f;
  Matrix g;
  Matrix h;
};

struct ClosedFormSolution {
  Matrix x;
  double objective = 0.0;
  std::optional<double> lambda;  // multiplier certificate (norm solver)
  std::vector<double> spectrum;  // kept singular values (rank solver)
};

/// Best rank-<= r solution; the minimum-norm global minimizer.  For
/// r >= min(rank(B), rank(C)) the rank cap is inactive and the unconstrained
/// minimizer is returned.
ClosedFormSolution solve_rank_constrained(const Matrix& a, const Matrix& b, const Matrix& c,
                                          Index r);

/// Minimizer among X having `lam` as an eigenvalue (square outer problem:
/// A n x n, B n x p, C p x n).  Reduces to the rank problem after the shift
/// A - lam * B C.
ClosedFormSolution solve_prescribed_eigenvalue(const Matrix& a, const Matrix& b, const Matrix& c,
                                               double lam);

/// Minimizer over the Frobenius ball ||X - center|| <= rho; `center` defaults
/// to the origin.  On the boundary case the returned lambda is the largest
/// root of the secular equation and satisfies the stationarity system.
ClosedFormSolution solve_norm_constrained(const Matrix& a, const Matrix& b, const Matrix& c,
                                          double rho,
                                          const std::optional<Matrix>& center = std::nullopt);

/// Minimizer subject to F X G = H.  Needs B of full column rank and C of
/// full row rank (throws RankDeficiencyError otherwise, pointing to the
/// iterative solver); F and G are reduced by pivoted QR first, and an
/// inconsistent constraint raises InfeasibleError.
ClosedFormSolution solve_two_sided_product(const Matrix& a, const Matrix& b, const Matrix& c,
                                           const TwoSidedConstraint& tsc);

/// Minimizer over symmetric X via the generalized SVD of (B, C).
ClosedFormSolution solve_symmetric(const Matrix& a, const Matrix& b, const Matrix& c);

/// Minimizer over skew-symmetric X.
ClosedFormSolution solve_skew_symmetric(const Matrix& a, const Matrix& b, const Matrix& c);

}  // namespace mnp
