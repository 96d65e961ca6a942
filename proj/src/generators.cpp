// SPDX-License-Identifier: Apache-2.0
#include "mnp/generators.hpp"

#include "mnp/linalg.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>

namespace mnp {

Matrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

Matrix random_orthogonal(Index n, Rng& rng) {
  Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  return q;
}

Matrix random_conditioned(Index rows, Index cols, double cond, Rng& rng) {
  require(cond >= 1.0, "random_conditioned: condition number must be at least 1");
  const Index k = std::min(rows, cols);
  Matrix u = random_orthogonal(rows, rng).leftCols(k);
  Matrix v = random_orthogonal(cols, rng).leftCols(k);
  Vector sv(k);
  for (Index i = 0; i < k; ++i)
    sv(i) = k == 1 ? cond : cond - (cond - 1.0) * double(i) / double(k - 1);
  return u * sv.asDiagonal() * v.transpose();
}

namespace {

Matrix symmetrize_exact(const Matrix& g, double sign) {
  const Index n = g.rows();
  Matrix x(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j <= i; ++j) {
      const double v = 0.5 * (g(i, j) + sign * g(j, i));
      x(i, j) = v;
      x(j, i) = sign * v;
    }
    if (sign < 0.0) x(i, i) = 0.0;
  }
  return x;
}

Matrix sinkhorn(Matrix x, int sweeps) {
  const Index n = x.rows();
  for (int s = 0; s < sweeps; ++s) {
    for (Index i = 0; i < n; ++i) x.row(i) /= x.row(i).sum();
    for (Index j = 0; j < n; ++j) x.col(j) /= x.col(j).sum();
  }
  return x;
}

}  // namespace

Matrix random_member(const ConstraintSpec& spec, Index n, Rng& rng) {
  switch (spec.kind) {
    case ConstraintKind::toeplitz: {
      Vector diag_values = random_gaussian(2 * n - 1, 1, rng);  // index n-1+d for offset d
      Matrix x(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = diag_values(n - 1 + i - j);
      return x;
    }
    case ConstraintKind::hankel: {
      Vector anti = random_gaussian(2 * n - 1, 1, rng);
      Matrix x(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = anti(i + j);
      return x;
    }
    case ConstraintKind::circulant: {
      Vector cyc = random_gaussian(n, 1, rng);
      Matrix x(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = cyc(((i - j) % n + n) % n);
      return x;
    }
    case ConstraintKind::symmetric:
      return symmetrize_exact(random_gaussian(n, n, rng), 1.0);
    case ConstraintKind::skew_symmetric:
      return symmetrize_exact(random_gaussian(n, n, rng), -1.0);
    case ConstraintKind::nonnegative:
      return random_gaussian(n, n, rng).cwiseAbs();
    case ConstraintKind::psd: {
      Matrix g = random_gaussian(n, n, rng);
      return symmetrize_exact(g * g.transpose() / double(n), 1.0);
    }
    case ConstraintKind::row_sum_one:
      return project_affine(random_gaussian(n, n, rng), ConstraintKind::row_sum_one);
    case ConstraintKind::col_sum_one:
      return project_affine(random_gaussian(n, n, rng), ConstraintKind::col_sum_one);
    case ConstraintKind::unit_diagonal:
      return project_affine(random_gaussian(n, n, rng), ConstraintKind::unit_diagonal);
    case ConstraintKind::eigenvector: {
      require(spec.eigvec.has_value() && spec.eigvec->size() == n,
              "random_member: eigenvector constraint needs a vector of length n");
      Matrix basis = extend_to_orthogonal(*spec.eigvec);
      Matrix core = Matrix::Zero(n, n);
      std::normal_distribution<double> normal;
      core(0, 0) = normal(rng);
      if (n > 1)
        core.bottomRightCorner(n - 1, n - 1) =
            symmetrize_exact(random_gaussian(n - 1, n - 1, rng), 1.0);
      return symmetrize_exact(basis * core * basis.transpose(), 1.0);
    }
    case ConstraintKind::stochastic: {
      Matrix x = random_gaussian(n, n, rng).cwiseAbs();
      for (Index i = 0; i < n; ++i) x.row(i) /= x.row(i).sum();
      return x;
    }
    case ConstraintKind::doubly_stochastic:
      return sinkhorn(random_gaussian(n, n, rng).cwiseAbs(), 50);
    case ConstraintKind::correlation: {
      Matrix g = random_gaussian(n, n, rng);
      Matrix s = symmetrize_exact(g * g.transpose() / double(n), 1.0);
      Vector d = s.diagonal().cwiseSqrt().cwiseInverse();
      Matrix x = symmetrize_exact(d.asDiagonal() * s * d.asDiagonal(), 1.0);
      x.diagonal().setOnes();
      return x;
    }
  }
  throw ValidationError("random_member: unhandled constraint kind");
}

}  // namespace mnp
