// SPDX-License-Identifier: Apache-2.0
#include "mnp/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace mnp {

namespace {

Index rank_from_spectrum(const Vector& sigma, double rank_tol, Index rows, Index cols) {
  if (sigma.size() == 0) return 0;
  const double cut = rank_tol * sigma(0) * static_cast<double>(std::max(rows, cols));
  Index r = 0;
  while (r < sigma.size() && sigma(r) > cut) ++r;
  return r;
}

}  // namespace

SvdFactors svd(const Matrix& a, double rank_tol) {
  require_matrix(a, "svd: A");
  require(rank_tol >= 0.0, "svd: rank tolerance must be nonnegative");
  Eigen::BDCSVD<Matrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdFactors f;
  f.u = dec.matrixU();
  f.v = dec.matrixV();
  f.singular_values = dec.singularValues();
  f.numerical_rank = rank_from_spectrum(f.singular_values, rank_tol, a.rows(), a.cols());
  return f;
}

Matrix extend_to_orthogonal(const Vector& v) {
  const Index n = v.size();
  require(n >= 1, "extend_to_orthogonal: empty vector");
  require(v.allFinite(), "extend_to_orthogonal: vector contains NaN or Inf entries");
  const double norm = v.norm();
  if (norm == 0.0) throw ValidationError("extend_to_orthogonal: zero vector");
  Vector u = v / norm;
  if (n == 1) return Matrix::Constant(1, 1, u(0) >= 0.0 ? 1.0 : -1.0);

  // Householder reflector sending u to -sign(u_1) e_1; flipping the first
  // column when u_1 >= 0 puts u in front while keeping the matrix orthogonal.
  const double sign = (u(0) >= 0.0) ? 1.0 : -1.0;
  Vector w = u;
  w(0) += sign;
  Matrix h = Matrix::Identity(n, n) - (2.0 / w.squaredNorm()) * (w * w.transpose());
  if (sign > 0.0) h.col(0) *= -1.0;
  return h;
}

std::pair<Matrix, Vector> symmetric_eig(const Matrix& a) {
  require_matrix(a, "symmetric_eig: A");
  require(a.rows() == a.cols(), "symmetric_eig: matrix must be square");
  Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  return {es.eigenvectors(), es.eigenvalues()};
}

Matrix GsvdFactors::sigma_b(Index rows_b) const {
  Matrix s = Matrix::Zero(rows_b, k);
  for (Index i = 0; i < r_size; ++i) s(i, i) = 1.0;
  for (Index i = 0; i < s_size; ++i) s(r_size + i, r_size + i) = beta(i);
  return s;
}

Matrix GsvdFactors::sigma_c(Index rows_c) const {
  Matrix s = Matrix::Zero(rows_c, k);
  const Index tail = k - r_size - s_size;
  const Index row0 = rows_c - (s_size + tail);  // = p - k + r
  for (Index i = 0; i < s_size; ++i) s(row0 + i, r_size + i) = gamma(i);
  for (Index i = 0; i < tail; ++i) s(row0 + s_size + i, r_size + s_size + i) = 1.0;
  return s;
}

GsvdFactors gsvd(const Matrix& b, const Matrix& c, double rank_tol) {
  require_matrix(b, "gsvd: B");
  require_matrix(c, "gsvd: C");
  require(b.cols() == c.rows(),
          "gsvd: inner dimensions differ (B is " + std::to_string(b.rows()) + "x" +
              std::to_string(b.cols()) + ", C is " + std::to_string(c.rows()) + "x" +
              std::to_string(c.cols()) + ")");
  const Index m = b.rows();
  const Index n = b.cols();
  const Index p = c.cols();

  // Rank-revealing factorization of the stack D = [B; C^T] = P1 T Q(:,1:k)^T.
  Matrix d(m + p, n);
  d.topRows(m) = b;
  d.bottomRows(p) = c.transpose();
  Eigen::BDCSVD<Matrix> dsvd(d, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vector t_all = dsvd.singularValues();
  const Index k = rank_from_spectrum(t_all, rank_tol, m + p, n);

  GsvdFactors f;
  f.k = k;
  f.q = dsvd.matrixV();
  f.r = Matrix(t_all.head(k).asDiagonal());

  if (k == 0) {  // both matrices numerically zero
    f.u = Matrix::Identity(m, m);
    f.v = Matrix::Identity(p, p);
    f.w = Matrix::Identity(0, 0);
    f.beta = Vector(0);
    f.gamma = Vector(0);
    f.m = f.q;
    return f;
  }

  const Matrix pb = dsvd.matrixU().topLeftCorner(m, k);     // m x k
  const Matrix pc = dsvd.matrixU().bottomLeftCorner(p, k);  // p x k

  // CS decomposition of the orthonormal pair (pb, pc): cosines from the SVD
  // of pb, sines measured directly on pc so that values near 0 on either
  // side stay fully accurate.
  Eigen::BDCSVD<Matrix> bsvd(pb, Eigen::ComputeFullU | Eigen::ComputeFullV);
  f.u = bsvd.matrixU();
  f.w = bsvd.matrixV();
  Vector beta_hat = Vector::Zero(k);
  beta_hat.head(std::min(m, k)) = bsvd.singularValues().head(std::min(m, k));
  beta_hat = beta_hat.cwiseMin(1.0);

  Matrix y = pc * f.w;  // p x k; column i has norm gamma_i
  Vector gamma_hat(k);
  for (Index i = 0; i < k; ++i) gamma_hat(i) = y.col(i).norm();

  // Block split: gamma ~ 0 -> leading identity block of Sigma_B,
  // beta ~ 0 -> trailing identity block of Sigma_C.
  const double tau = 1e-12;
  Index r_size = 0;
  while (r_size < k && gamma_hat(r_size) <= tau) ++r_size;
  Index zeros = 0;
  while (zeros < k - r_size && beta_hat(k - 1 - zeros) <= tau) ++zeros;
  const Index s_size = k - r_size - zeros;
  f.r_size = r_size;
  f.s_size = s_size;

  f.beta = Vector(s_size);
  f.gamma = Vector(s_size);
  for (Index i = 0; i < s_size; ++i) {
    const Index col = r_size + i;
    // Take the better-conditioned of the two measurements and derive the
    // partner through beta^2 + gamma^2 = 1.
    if (beta_hat(col) >= gamma_hat(col)) {
      f.gamma(i) = std::min(gamma_hat(col), 1.0);
      f.beta(i) = std::sqrt((1.0 - f.gamma(i)) * (1.0 + f.gamma(i)));
    } else {
      f.beta(i) = beta_hat(col);
      f.gamma(i) = std::sqrt((1.0 - f.beta(i)) * (1.0 + f.beta(i)));
    }
    if (i > 0 && f.beta(i) > f.beta(i - 1)) {  // iron out last-ulp jitter
      f.beta(i) = f.beta(i - 1);
      f.gamma(i) = f.gamma(i - 1);
    }
  }

  // V columns p-k+r+1 .. p come from the nonzero-sine columns of y;
  // modified Gram-Schmidt from the most reliable (largest sine) down.
  Matrix v = Matrix::Zero(p, p);
  const Index row0 = p - k + r_size;
  for (Index i = k - 1; i >= r_size; --i) {
    Vector col = y.col(i);
    for (Index j = k - 1; j > i; --j) {
      const Vector& prev = v.col(p - k + j);
      col -= prev.dot(col) * prev;
    }
    const double norm = col.norm();
    require(norm > 0.0, "gsvd: degenerate sine column");
    v.col(p - k + i) = col / norm;
  }
  // Orthonormal completion for the first p-k+r columns.
  if (row0 > 0) {
    const Index fixed = k - r_size;
    if (fixed == 0) {
      v.setIdentity();
    } else {
      Eigen::HouseholderQR<Matrix> qr(v.rightCols(fixed).eval());
      Matrix full = qr.householderQ() * Matrix::Identity(p, p);
      v.leftCols(row0) = full.rightCols(row0);
    }
  }
  f.v = v;

  // M = Q blkdiag(R^{-1} W, I).
  Matrix mid = Matrix::Zero(n, n);
  mid.topLeftCorner(k, k) = f.r.diagonal().cwiseInverse().asDiagonal() * f.w;
  if (n > k) mid.bottomRightCorner(n - k, n - k).setIdentity();
  f.m = f.q * mid;
  return f;
}

}  // namespace mnp
