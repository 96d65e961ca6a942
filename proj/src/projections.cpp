// SPDX-License-Identifier: Apache-2.0
#include "mnp/projections.hpp"

#include "mnp/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace mnp {

bool is_composite(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::stochastic:
    case ConstraintKind::doubly_stochastic:
    case ConstraintKind::correlation:
      return true;
    default:
      return false;
  }
}

const char* to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::toeplitz: return "toeplitz";
    case ConstraintKind::hankel: return "hankel";
    case ConstraintKind::circulant: return "circulant";
    case ConstraintKind::symmetric: return "symmetric";
    case ConstraintKind::skew_symmetric: return "skew-symmetric";
    case ConstraintKind::nonnegative: return "nonnegative";
    case ConstraintKind::psd: return "psd";
    case ConstraintKind::row_sum_one: return "row-sum-one";
    case ConstraintKind::col_sum_one: return "col-sum-one";
    case ConstraintKind::unit_diagonal: return "unit-diagonal";
    case ConstraintKind::eigenvector: return "eigenvector";
    case ConstraintKind::stochastic: return "stochastic";
    case ConstraintKind::doubly_stochastic: return "doubly-stochastic";
    case ConstraintKind::correlation: return "correlation";
  }
  return "?";
}

ConstraintKind constraint_kind_from_string(const std::string& name) {
  auto canon = name;
  std::replace(canon.begin(), canon.end(), '_', '-');
  for (ConstraintKind k :
       {ConstraintKind::toeplitz, ConstraintKind::hankel, ConstraintKind::circulant,
        ConstraintKind::symmetric, ConstraintKind::skew_symmetric, ConstraintKind::nonnegative,
        ConstraintKind::psd, ConstraintKind::row_sum_one, ConstraintKind::col_sum_one,
        ConstraintKind::unit_diagonal, ConstraintKind::eigenvector, ConstraintKind::stochastic,
        ConstraintKind::doubly_stochastic, ConstraintKind::correlation}) {
    if (canon == to_string(k)) return k;
  }
  throw ValidationError("unknown constraint kind: " + name);
}

std::vector<ConstraintSpec> ConstraintSpec::expand() const {
  switch (kind) {
    case ConstraintKind::stochastic:
      return {{ConstraintKind::row_sum_one, {}}, {ConstraintKind::nonnegative, {}}};
    case ConstraintKind::doubly_stochastic:
      return {{ConstraintKind::row_sum_one, {}},
              {ConstraintKind::col_sum_one, {}},
              {ConstraintKind::nonnegative, {}}};
    case ConstraintKind::correlation:
      return {{ConstraintKind::unit_diagonal, {}}, {ConstraintKind::psd, {}}};
    default:
      return {*this};
  }
}

Matrix project_structured(const Matrix& a, ConstraintKind kind) {
  require_matrix(a, "project_structured: A");
  require(a.rows() == a.cols(), "project_structured: matrix must be square");
  const Index n = a.rows();
  Matrix x(n, n);
  switch (kind) {
    case ConstraintKind::toeplitz: {
      // One mean per diagonal offset i - j.
      for (Index d = -(n - 1); d <= n - 1; ++d) {
        double sum = 0.0;
        Index count = 0;
        for (Index i = std::max<Index>(0, d); i < std::min(n, n + d); ++i) {
          sum += a(i, i - d);
          ++count;
        }
        const double mean = sum / static_cast<double>(count);
        for (Index i = std::max<Index>(0, d); i < std::min(n, n + d); ++i) x(i, i - d) = mean;
      }
      return x;
    }
    case ConstraintKind::hankel: {
      // One mean per antidiagonal i + j.
      for (Index s = 0; s <= 2 * (n - 1); ++s) {
        double sum = 0.0;
        Index count = 0;
        for (Index i = std::max<Index>(0, s - (n - 1)); i <= std::min(n - 1, s); ++i) {
          sum += a(i, s - i);
          ++count;
        }
        const double mean = sum / static_cast<double>(count);
        for (Index i = std::max<Index>(0, s - (n - 1)); i <= std::min(n - 1, s); ++i)
          x(i, s - i) = mean;
      }
      return x;
    }
    case ConstraintKind::circulant: {
      // One mean per cyclic class (i - j) mod n.
      Vector sums = Vector::Zero(n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) sums(((i - j) % n + n) % n) += a(i, j);
      sums /= static_cast<double>(n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = sums(((i - j) % n + n) % n);
      return x;
    }
    default:
      throw ValidationError("project_structured: kind must be toeplitz, hankel, or circulant");
  }
}

Matrix project_cone(const Matrix& a, ConstraintKind kind) {
  require_matrix(a, "project_cone: A");
  switch (kind) {
    case ConstraintKind::nonnegative:
      return a.cwiseMax(0.0);
    case ConstraintKind::psd: {
      require(a.rows() == a.cols(), "project_cone: psd projection needs a square matrix");
      auto [vecs, vals] = symmetric_eig(a);
      Matrix x = vecs * vals.cwiseMax(0.0).asDiagonal() * vecs.transpose();
      return 0.5 * (x + x.transpose());
    }
    default:
      throw ValidationError("project_cone: kind must be nonnegative or psd");
  }
}

Matrix project_affine(const Matrix& a, ConstraintKind kind) {
  require_matrix(a, "project_affine: A");
  const Index n = a.rows();
  switch (kind) {
    case ConstraintKind::row_sum_one: {
      require(a.rows() == a.cols(), "project_affine: row-sum-one needs a square matrix");
      Matrix x = a;
      for (Index i = 0; i < n; ++i) x.row(i).array() -= (a.row(i).sum() - 1.0) / double(n);
      return x;
    }
    case ConstraintKind::col_sum_one: {
      require(a.rows() == a.cols(), "project_affine: col-sum-one needs a square matrix");
      Matrix x = a;
      for (Index j = 0; j < a.cols(); ++j)
        x.col(j).array() -= (a.col(j).sum() - 1.0) / double(a.rows());
      return x;
    }
    case ConstraintKind::unit_diagonal: {
      require(a.rows() == a.cols(), "project_affine: unit-diagonal needs a square matrix");
      Matrix x = 0.5 * (a + a.transpose());
      x.diagonal().setOnes();
      return x;
    }
    case ConstraintKind::symmetric:
      require(a.rows() == a.cols(), "project_affine: symmetric needs a square matrix");
      return 0.5 * (a + a.transpose());
    case ConstraintKind::skew_symmetric:
      require(a.rows() == a.cols(), "project_affine: skew-symmetric needs a square matrix");
      return 0.5 * (a - a.transpose());
    default:
      throw ValidationError(
          "project_affine: kind must be row-sum-one, col-sum-one, unit-diagonal, symmetric, "
          "or skew-symmetric");
  }
}

Matrix project_eigvec(const Matrix& a, const Vector& v) {
  require_matrix(a, "project_eigvec: A");
  require(a.rows() == a.cols(), "project_eigvec: matrix must be square");
  require(a.rows() == v.size(), "project_eigvec: vector length must match the matrix order");
  const Index n = a.rows();
  Matrix basis = extend_to_orthogonal(v);
  Matrix t = basis.transpose() * a * basis;
  Matrix core = Matrix::Zero(n, n);
  core(0, 0) = t(0, 0);
  if (n > 1) {
    auto a22 = t.bottomRightCorner(n - 1, n - 1);
    core.bottomRightCorner(n - 1, n - 1) = 0.5 * (a22 + a22.transpose());
  }
  Matrix x = basis * core * basis.transpose();
  return 0.5 * (x + x.transpose());
}

Matrix project(const Matrix& a, const ConstraintSpec& spec) {
  switch (spec.kind) {
    case ConstraintKind::toeplitz:
    case ConstraintKind::hankel:
    case ConstraintKind::circulant:
      return project_structured(a, spec.kind);
    case ConstraintKind::nonnegative:
    case ConstraintKind::psd:
      return project_cone(a, spec.kind);
    case ConstraintKind::row_sum_one:
    case ConstraintKind::col_sum_one:
    case ConstraintKind::unit_diagonal:
    case ConstraintKind::symmetric:
    case ConstraintKind::skew_symmetric:
      return project_affine(a, spec.kind);
    case ConstraintKind::eigenvector:
      require(spec.eigvec.has_value(), "project: eigenvector constraint needs a vector");
      return project_eigvec(a, *spec.eigvec);
    default:
      throw ValidationError(std::string("project: no single closed-form projection onto '") +
                            to_string(spec.kind) + "'; use project_intersection");
  }
}

Matrix project_intersection(const Matrix& a, const std::vector<ConstraintSpec>& sets,
                            double tol, int max_iters) {
  require_matrix(a, "project_intersection: A");
  require(!sets.empty(), "project_intersection: no sets given");
  std::vector<ConstraintSpec> flat;
  for (const auto& s : sets)
    for (const auto& e : s.expand()) flat.push_back(e);

  Matrix x = a;
  std::vector<Matrix> corrections(flat.size(), Matrix::Zero(a.rows(), a.cols()));
  for (int iter = 0; iter < max_iters; ++iter) {
    double moved = 0.0;
    for (std::size_t i = 0; i < flat.size(); ++i) {
      Matrix shifted = x - corrections[i];
      Matrix projected = project(shifted, flat[i]);
      corrections[i] = projected - shifted;
      moved += (projected - x).norm();
      x = projected;
    }
    if (moved <= tol * (1.0 + x.norm())) break;
  }
  return x;
}

}  // namespace mnp
