// SPDX-License-Identifier: Apache-2.0
#include "mnp/closed_form.hpp"

#include "mnp/secular.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace mnp {

namespace {

double objective_of(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& x) {
  return (a - b * x * c).norm();
}

void require_compatible(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_matrix(a, "A");
  require_matrix(b, "B");
  require_matrix(c, "C");
  require(b.rows() == a.rows(), "B: row count must match A (A is " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()) + ", B has " +
                                    std::to_string(b.rows()) + " rows)");
  require(c.cols() == a.cols(), "C: column count must match A (A is " + std::to_string(a.rows()) +
                                    "x" + std::to_string(a.cols()) + ", C has " +
                                    std::to_string(c.cols()) + " columns)");
}

// Exact symmetric/antisymmetric rounding: entry (i,j) and (j,i) are built
// from the same two loads, so the transpose relation holds bitwise.
Matrix symmetrize(const Matrix& t, double sign) {
  Matrix x(t.rows(), t.cols());
  for (Index i = 0; i < t.rows(); ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double v = 0.5 * (t(i, j) + sign * t(j, i));
      x(i, j) = v;
      x(j, i) = sign * v;
    }
    if (sign < 0.0) x(i, i) = 0.0;
  }
  return x;
}

// Reduced pivoted-QR form of the pair (F, G): rewrites F X G = H as
// F' X G' = H' with F' of full row rank and G' of full column rank, or
// reports infeasibility when H has components outside the reachable range.
struct ReducedConstraint {
  Matrix f;
  Matrix g;
  Matrix h;
  bool empty = false;  // no active constraint rows/columns remain
};

ReducedConstraint reduce_constraint(const TwoSidedConstraint& tsc, double tol) {
  ReducedConstraint out;
  const Matrix& f = tsc.f;
  const Matrix& g = tsc.g;
  const Matrix& h = tsc.h;
  if (f.size() == 0 || g.size() == 0) {
    out.empty = true;
    return out;
  }
  require(h.rows() == f.rows() && h.cols() == g.cols(),
          "H: expected " + std::to_string(f.rows()) + "x" + std::to_string(g.cols()) +
              " to match F and G");

  Eigen::ColPivHouseholderQR<Matrix> qr_f(f);
  qr_f.setThreshold(tol);
  const Index rank_f = qr_f.rank();
  Eigen::ColPivHouseholderQR<Matrix> qr_g(g.transpose().eval());
  qr_g.setThreshold(tol);
  const Index rank_g = qr_g.rank();

  Matrix qf = qr_f.householderQ() * Matrix::Identity(f.rows(), f.rows());
  Matrix qg = qr_g.householderQ() * Matrix::Identity(g.cols(), g.cols());
  Matrix qf1 = qf.leftCols(rank_f);
  Matrix qg1 = qg.leftCols(rank_g);

  // Components of H that no X can reach.
  Matrix h_reach = qf1 * (qf1.transpose() * h * qg1) * qg1.transpose();
  const double defect = (h - h_reach).norm();
  if (defect > tol * (1.0 + h.norm()))
    throw InfeasibleError("two-sided constraint F X G = H is inconsistent (unreachable part of H "
                          "has norm " + std::to_string(defect) + ")");

  if (rank_f == 0 || rank_g == 0) {
    out.empty = true;
    return out;
  }
  out.f = qf1.transpose() * f;  // full row rank
  out.g = g * qg1;              // full column rank
  out.h = qf1.transpose() * h * qg1;
  return out;
}

}  // namespace

Matrix FrameReduction::embed(const Matrix& x11) const {
  const Index p = svd_b.v.rows();
  const Index q = svd_c.u.rows();
  Matrix xt = Matrix::Zero(p, q);
  xt.topLeftCorner(x11.rows(), x11.cols()) = x11;
  return svd_b.v * xt * svd_c.u.transpose();
}

FrameReduction frame_reduce(const Matrix& a, const Matrix& b, const Matrix& c) {
  require_compatible(a, b, c);
  FrameReduction fr;
  fr.svd_b = svd(b);
  fr.svd_c = svd(c);
  fr.a_tilde = fr.svd_b.u.transpose() * a * fr.svd_c.v;
  const Index s = fr.svd_b.numerical_rank;
  const Index t = fr.svd_c.numerical_rank;
  fr.a11 = fr.a_tilde.topLeftCorner(s, t);
  fr.s_b = fr.svd_b.supported();
  fr.s_c = fr.svd_c.supported();
  fr.sigma = fr.s_b * fr.s_c.transpose();
  return fr;
}

ClosedFormSolution solve_rank_constrained(const Matrix& a, const Matrix& b, const Matrix& c,
                                          Index r) {
  require(r >= 0, "rank bound must be nonnegative");
  FrameReduction fr = frame_reduce(a, b, c);
  const Index s = fr.s_b.size();
  const Index t = fr.s_c.size();

  ClosedFormSolution sol;
  Matrix x11;
  if (r == 0 || s == 0 || t == 0) {
    x11 = Matrix::Zero(s, t);
  } else if (r >= std::min(s, t)) {
    // Rank cap inactive: plain unconstrained minimizer on the active block.
    x11 = fr.s_b.cwiseInverse().asDiagonal() * fr.a11 * fr.s_c.cwiseInverse().asDiagonal();
    SvdFactors a11_svd = svd(fr.a11);
    for (Index i = 0; i < a11_svd.singular_values.size(); ++i)
      sol.spectrum.push_back(a11_svd.singular_values(i));
  } else {
    SvdFactors a11_svd = svd(fr.a11);
    Matrix trunc = a11_svd.u.leftCols(r) * a11_svd.singular_values.head(r).asDiagonal() *
                   a11_svd.v.leftCols(r).transpose();
    x11 = fr.s_b.cwiseInverse().asDiagonal() * trunc * fr.s_c.cwiseInverse().asDiagonal();
    for (Index i = 0; i < r; ++i) sol.spectrum.push_back(a11_svd.singular_values(i));
  }
  sol.x = fr.embed(x11);
  sol.objective = objective_of(a, b, c, sol.x);
  return sol;
}

ClosedFormSolution solve_prescribed_eigenvalue(const Matrix& a, const Matrix& b, const Matrix& c,
                                               double lam) {
  require_compatible(a, b, c);
  require(std::isfinite(lam), "prescribed eigenvalue must be finite");
  require(a.rows() == a.cols(), "prescribed-eigenvalue problem needs a square A");
  require(b.cols() == c.rows(), "prescribed-eigenvalue problem needs square X (B columns must "
                                "equal C rows)");
  const Index p = b.cols();
  Matrix shifted = a - lam * (b * c);
  ClosedFormSolution sol = solve_rank_constrained(shifted, b, c, p - 1);
  sol.x += lam * Matrix::Identity(p, p);
  sol.objective = objective_of(a, b, c, sol.x);
  return sol;
}

ClosedFormSolution solve_norm_constrained(const Matrix& a, const Matrix& b, const Matrix& c,
                                          double rho, const std::optional<Matrix>& center) {
  require(rho > 0.0 && std::isfinite(rho), "rho must be positive");
  if (center) {
    require(center->rows() == b.cols() && center->cols() == c.rows(),
            "center: expected " + std::to_string(b.cols()) + "x" + std::to_string(c.rows()));
    Matrix a_shift = a - b * (*center) * c;
    ClosedFormSolution sol = solve_norm_constrained(a_shift, b, c, rho, std::nullopt);
    sol.x += *center;
    sol.objective = objective_of(a, b, c, sol.x);
    return sol;
  }

  FrameReduction fr = frame_reduce(a, b, c);
  const Index s = fr.s_b.size();
  const Index t = fr.s_c.size();

  ClosedFormSolution sol;
  if (s == 0 || t == 0) {
    sol.x = Matrix::Zero(b.cols(), c.rows());
    sol.lambda = 0.0;
    sol.objective = objective_of(a, b, c, sol.x);
    return sol;
  }

  Matrix free_min =
      fr.s_b.cwiseInverse().asDiagonal() * fr.a11 * fr.s_c.cwiseInverse().asDiagonal();
  if (free_min.norm() <= rho) {
    sol.x = fr.embed(free_min);
    sol.lambda = 0.0;
    sol.objective = objective_of(a, b, c, sol.x);
    return sol;
  }

  SecularProblem sp;
  sp.rho = rho;
  sp.terms.reserve(static_cast<std::size_t>(s * t));
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < t; ++j) sp.terms.push_back({fr.a11(i, j), fr.sigma(i, j)});
  const double lambda = largest_secular_root(sp);

  Matrix x11(s, t);
  for (Index i = 0; i < s; ++i)
    for (Index j = 0; j < t; ++j)
      x11(i, j) = fr.a11(i, j) / (fr.sigma(i, j) + lambda / fr.sigma(i, j));
  sol.x = fr.embed(x11);
  sol.lambda = lambda;
  sol.objective = objective_of(a, b, c, sol.x);
  return sol;
}

ClosedFormSolution solve_two_sided_product(const Matrix& a, const Matrix& b, const Matrix& c,
                                           const TwoSidedConstraint& tsc) {
  require_compatible(a, b, c);
  const Index p = b.cols();
  const Index q = c.rows();
  if (tsc.f.size() != 0)
    require(tsc.f.cols() == p, "F: expected " + std::to_string(p) + " columns to match X rows");
  if (tsc.g.size() != 0)
    require(tsc.g.rows() == q, "G: expected " + std::to_string(q) + " rows to match X columns");

  FrameReduction fr = frame_reduce(a, b, c);
  if (fr.svd_b.numerical_rank < p || fr.svd_c.numerical_rank < q)
    throw RankDeficiencyError(
        "two-sided closed form needs B of full column rank and C of full row rank; use the "
        "iterative solver for rank-deficient data");

  const Vector sb_inv = fr.s_b.cwiseInverse();
  const Vector sc_inv = fr.s_c.cwiseInverse();

  const double tol = 1e-12;
  ReducedConstraint rc = reduce_constraint(tsc, tol);

  ClosedFormSolution sol;
  if (rc.empty) {
    sol.x = fr.embed(sb_inv.asDiagonal() * fr.a11 * sc_inv.asDiagonal());
    sol.objective = objective_of(a, b, c, sol.x);
    return sol;
  }

  // Transport the constraint into the frame coordinates and apply the
  // projector-based update for min ||A11 - Y|| s.t. F_B Y G_C = H.
  Matrix fb = rc.f * fr.svd_b.v * sb_inv.asDiagonal();           // k x p
  Matrix gc = sc_inv.asDiagonal() * fr.svd_c.u.transpose() * rc.g;  // q x l

  Eigen::LLT<Matrix> fft((fb * fb.transpose()).eval());
  Eigen::LLT<Matrix> gtg((gc.transpose() * gc).eval());
  Matrix correction = fb.transpose() *
                      fft.solve(rc.h - fb * fr.a11 * gc) *
                      gtg.solve(gc.transpose()).eval();
  Matrix x11 = sb_inv.asDiagonal() * (fr.a11 + correction) * sc_inv.asDiagonal();
  sol.x = fr.embed(x11);
  sol.objective = objective_of(a, b, c, sol.x);
  return sol;
}

namespace {

ClosedFormSolution solve_with_symmetry(const Matrix& a, const Matrix& b, const Matrix& c,
                                       double sign) {
  require_matrix(a, "A");
  require_matrix(b, "B");
  require_matrix(c, "C");
  require(b.rows() == a.rows(), "B: row count must match A");
  require(c.cols() == a.cols(), "C: column count must match A");
  require(b.cols() == c.rows(), "symmetry-constrained X must be square (B columns must equal "
                                "C rows)");
  const Index n = b.cols();

  GsvdFactors gf = gsvd(b, c);
  const Index r = gf.r_size;
  const Index s = gf.s_size;
  const Index k = gf.k;
  const Index tail = k - r - s;  // width of the trailing identity block
  const Index p_cols = c.cols();

  Matrix at = gf.u.transpose() * a * gf.v;
  // Row blocks (r, s, m-r-s); column blocks (p-k+r, s, k-r-s).
  const Index col0 = p_cols - k + r;
  Matrix a12 = at.block(0, col0, r, s);
  Matrix a13 = at.block(0, col0 + s, r, tail);
  Matrix a23 = at.block(r, col0 + s, s, tail);
  Matrix a22 = at.block(r, col0, s, s);

  Vector sb_inv = gf.beta.cwiseInverse();
  Vector sc_inv = gf.gamma.cwiseInverse();

  Matrix x22 = Matrix::Zero(s, s);
  for (Index i = 0; i < s; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double sij = gf.beta(i) * gf.gamma(j);
      const double sji = gf.beta(j) * gf.gamma(i);
      const double denom = sij * sij + sji * sji;
      const double v = denom != 0.0 ? (a22(i, j) * sij + sign * a22(j, i) * sji) / denom : 0.0;
      x22(i, j) = v;
      x22(j, i) = sign * v;
    }
    if (sign < 0.0) x22(i, i) = 0.0;
  }

  Matrix xt = Matrix::Zero(n, n);  // blocks (r, s, k-r-s, n-k) on both sides
  xt.block(0, r, r, s) = a12 * sc_inv.asDiagonal();
  xt.block(r, 0, s, r) = sign * (a12 * sc_inv.asDiagonal()).transpose();
  xt.block(0, r + s, r, tail) = a13;
  xt.block(r + s, 0, tail, r) = sign * a13.transpose();
  xt.block(r, r, s, s) = x22;
  xt.block(r, r + s, s, tail) = sb_inv.asDiagonal() * a23;
  xt.block(r + s, r, tail, s) = sign * (sb_inv.asDiagonal() * a23).transpose();

  ClosedFormSolution sol;
  sol.x = symmetrize(gf.m * xt * gf.m.transpose(), sign);
  sol.objective = (a - b * sol.x * c).norm();
  return sol;
}

}  // namespace

ClosedFormSolution solve_symmetric(const Matrix& a, const Matrix& b, const Matrix& c) {
  return solve_with_symmetry(a, b, c, 1.0);
}

ClosedFormSolution solve_skew_symmetric(const Matrix& a, const Matrix& b, const Matrix& c) {
  return solve_with_symmetry(a, b, c, -1.0);
}

}  // namespace mnp
