// SPDX-License-Identifier: Apache-2.0
#include "mnp/oracles.hpp"

#include "mnp/linalg.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mnp {

namespace {

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix basis_unit(Index p, Index q, Index i, Index j) {
  Matrix e = Matrix::Zero(p, q);
  e(i, j) = 1.0;
  return e;
}

double default_step(const Matrix& b, const Matrix& c) {
  Eigen::BDCSVD<Matrix> sb(b);
  Eigen::BDCSVD<Matrix> sc(c);
  const double top = sb.singularValues()(0) * sc.singularValues()(0);
  require(top > 0.0, "oracle: B and C must be nonzero");
  return 0.5 / (top * top);
}

}  // namespace

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return k;
}

LinearParameterization make_parameterization(const std::string& name, Index p, Index q) {
  LinearParameterization param;
  param.offset = Matrix::Zero(p, q);
  const Index n = p;
  auto need_square = [&] {
    require(p == q, "parameterization '" + name + "' needs a square unknown");
  };
  if (name == "full") {
    for (Index j = 0; j < q; ++j)
      for (Index i = 0; i < p; ++i) param.basis.push_back(basis_unit(p, q, i, j));
  } else if (name == "symmetric") {
    need_square();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j <= i; ++j) {
        Matrix e = basis_unit(n, n, i, j);
        if (i != j) e(j, i) = 1.0;
        param.basis.push_back(e);
      }
  } else if (name == "skew-symmetric") {
    need_square();
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < i; ++j) {
        Matrix e = basis_unit(n, n, i, j);
        e(j, i) = -1.0;
        param.basis.push_back(e);
      }
  } else if (name == "toeplitz") {
    need_square();
    for (Index d = -(n - 1); d <= n - 1; ++d) {
      Matrix e = Matrix::Zero(n, n);
      for (Index i = std::max<Index>(0, d); i < std::min(n, n + d); ++i) e(i, i - d) = 1.0;
      param.basis.push_back(e);
    }
  } else if (name == "hankel") {
    need_square();
    for (Index s = 0; s <= 2 * (n - 1); ++s) {
      Matrix e = Matrix::Zero(n, n);
      for (Index i = std::max<Index>(0, s - (n - 1)); i <= std::min(n - 1, s); ++i)
        e(i, s - i) = 1.0;
      param.basis.push_back(e);
    }
  } else if (name == "circulant") {
    need_square();
    for (Index d = 0; d < n; ++d) {
      Matrix e = Matrix::Zero(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
          if (((i - j) % n + n) % n == d) e(i, j) = 1.0;
      param.basis.push_back(e);
    }
  } else if (name == "row-sum-one") {
    need_square();
    param.offset = Matrix::Constant(n, n, 1.0 / double(n));
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j + 1 < n; ++j) {
        Matrix e = Matrix::Zero(n, n);
        e(i, j) = 1.0;
        e(i, j + 1) = -1.0;
        param.basis.push_back(e);
      }
  } else if (name == "col-sum-one") {
    need_square();
    param.offset = Matrix::Constant(n, n, 1.0 / double(n));
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i + 1 < n; ++i) {
        Matrix e = Matrix::Zero(n, n);
        e(i, j) = 1.0;
        e(i + 1, j) = -1.0;
        param.basis.push_back(e);
      }
  } else if (name == "unit-diagonal") {
    need_square();
    param.offset = Matrix::Identity(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < i; ++j) {
        Matrix e = basis_unit(n, n, i, j);
        e(j, i) = 1.0;
        param.basis.push_back(e);
      }
  } else {
    throw ContractError("no affine parameterization named '" + name + "'");
  }
  return param;
}

OracleResult oracle_kron_ls(const Matrix& a, const Matrix& b, const Matrix& c,
                            const LinearParameterization& param) {
  require_matrix(a, "oracle_kron_ls: A");
  const Index d = static_cast<Index>(param.basis.size());
  Matrix op(a.size(), d);
  for (Index i = 0; i < d; ++i) op.col(i) = vec(b * param.basis[i] * c);
  Vector rhs = vec(a - b * param.offset * c);
  Vector coords = op.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

  OracleResult res;
  res.method = "kron-ls";
  res.x = param.offset;
  for (Index i = 0; i < d; ++i) res.x += coords(i) * param.basis[i];
  res.objective = (a - b * res.x * c).norm();
  return res;
}

OracleResult oracle_two_sided_kkt(const Matrix& a, const Matrix& b, const Matrix& c,
                                  const Matrix& f, const Matrix& g, const Matrix& h) {
  require_matrix(a, "oracle_two_sided_kkt: A");
  const Index p = b.cols();
  const Index q = c.rows();
  Matrix k_obj = kron(c.transpose(), b);   // vec(BXC) = K vec(X)
  Matrix k_con = kron(g.transpose(), f);   // vec(FXG) = E vec(X)
  const Index nx = p * q;
  const Index nc = k_con.rows();

  Matrix kkt = Matrix::Zero(nx + nc, nx + nc);
  kkt.topLeftCorner(nx, nx) = 2.0 * k_obj.transpose() * k_obj;
  kkt.topRightCorner(nx, nc) = k_con.transpose();
  kkt.bottomLeftCorner(nc, nx) = k_con;
  Vector rhs(nx + nc);
  rhs.head(nx) = 2.0 * k_obj.transpose() * vec(a);
  rhs.tail(nc) = vec(h);

  Vector sol = kkt.completeOrthogonalDecomposition().solve(rhs);
  OracleResult res;
  res.method = "two-sided-kkt";
  res.x = unvec(sol.head(nx), p, q);
  res.objective = (a - b * res.x * c).norm();
  return res;
}

Projector make_set_projector(const ConstraintSpec& spec) {
  auto flat = spec.expand();
  if (flat.size() == 1) {
    ConstraintSpec s = flat.front();
    return [s](const Matrix& m) { return project(m, s); };
  }
  // Cyclic projection sweep; adequate inside a gradient loop.
  return [flat](const Matrix& m) {
    Matrix x = m;
    for (int sweep = 0; sweep < 25; ++sweep)
      for (const auto& s : flat) x = project(x, s);
    return x;
  };
}

Projector make_ball_projector(double rho, const Matrix& center) {
  require(rho > 0.0, "ball projector: rho must be positive");
  return [rho, center](const Matrix& m) {
    Matrix d = m - center;
    const double norm = d.norm();
    if (norm <= rho) return m;
    return Matrix(center + (rho / norm) * d);
  };
}

OracleResult oracle_projected_gradient(const Matrix& a, const Matrix& b, const Matrix& c,
                                       const Projector& project_onto, Index steps,
                                       double step_size) {
  require_matrix(a, "oracle_projected_gradient: A");
  const double eta = step_size > 0.0 ? step_size : default_step(b, c);
  Matrix x = project_onto(Matrix::Zero(b.cols(), c.rows()));
  double prev = (a - b * x * c).squaredNorm();
  int rising = 0;
  for (Index k = 0; k < steps; ++k) {
    Matrix grad = 2.0 * b.transpose() * (b * x * c - a) * c.transpose();
    x = project_onto(x - eta * grad);
    const double val = (a - b * x * c).squaredNorm();
    rising = val > prev ? rising + 1 : 0;
    if (rising >= 100)
      throw DivergenceError("projected gradient diverged: objective rose for 100 "
                            "consecutive steps");
    prev = val;
  }
  OracleResult res;
  res.method = "projected-gradient";
  res.iterations = steps;
  res.x = x;
  res.objective = (a - b * x * c).norm();
  Matrix grad = 2.0 * b.transpose() * (b * x * c - a) * c.transpose();
  res.grad_map_norm = (x - project_onto(x - eta * grad)).norm() / eta;
  return res;
}

OracleResult oracle_rank_alternating(const Matrix& a, const Matrix& b, const Matrix& c, Index r,
                                     int restarts, int sweeps, std::uint64_t seed) {
  require_matrix(a, "oracle_rank_alternating: A");
  require(r >= 1, "oracle_rank_alternating: r must be at least 1");
  const Index p = b.cols();
  const Index q = c.rows();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  OracleResult best;
  best.method = "rank-alternating";
  best.objective = std::numeric_limits<double>::infinity();
  for (int rs = 0; rs < restarts; ++rs) {
    Matrix u(p, r), v(q, r);
    for (Index i = 0; i < p; ++i)
      for (Index j = 0; j < r; ++j) u(i, j) = normal(rng);
    for (Index i = 0; i < q; ++i)
      for (Index j = 0; j < r; ++j) v(i, j) = normal(rng);

    for (int sweep = 0; sweep < sweeps; ++sweep) {
      // Fix U, solve for W = V^T in ||A - (BU) W C||.
      Matrix bu = b * u;
      Matrix op_v = kron(c.transpose(), bu);
      Vector w = op_v.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(vec(a));
      Matrix wt = unvec(w, r, q);
      v = wt.transpose();
      // Fix V, solve for U in ||A - B U (V^T C)||.
      Matrix vc = v.transpose() * c;
      Matrix op_u = kron(vc.transpose(), b);
      Vector uu = op_u.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(vec(a));
      u = unvec(uu, p, r);
    }
    Matrix x = u * v.transpose();
    const double obj = (a - b * x * c).norm();
    if (obj < best.objective) {
      best.objective = obj;
      best.x = x;
    }
  }
  best.iterations = restarts * sweeps;
  return best;
}

OracleResult oracle_prescribed_eigenvalue(const Matrix& a, const Matrix& b, const Matrix& c,
                                          double lam, int restarts, Index steps,
                                          std::uint64_t seed) {
  require_matrix(a, "oracle_prescribed_eigenvalue: A");
  const Index p = b.cols();
  require(p == c.rows() && a.rows() == a.cols(), "oracle_prescribed_eigenvalue: square problem "
                                                 "required");
  const double eta = default_step(b, c);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  auto snap = [&](const Matrix& x) {
    // Nearest matrix with lam in its spectrum: remove the smallest singular
    // value of X - lam I.
    Matrix shifted = x - lam * Matrix::Identity(p, p);
    Eigen::BDCSVD<Matrix> dec(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Index last = dec.singularValues().size() - 1;
    Matrix fix = shifted - dec.singularValues()(last) * dec.matrixU().col(last) *
                               dec.matrixV().col(last).transpose();
    return Matrix(fix + lam * Matrix::Identity(p, p));
  };

  OracleResult best;
  best.method = "eigenvalue-snap-gradient";
  best.objective = std::numeric_limits<double>::infinity();
  for (int rs = 0; rs < restarts; ++rs) {
    Matrix x(p, p);
    for (Index i = 0; i < p; ++i)
      for (Index j = 0; j < p; ++j) x(i, j) = normal(rng);
    x = snap(x);
    for (Index k = 0; k < steps; ++k) {
      Matrix grad = 2.0 * b.transpose() * (b * x * c - a) * c.transpose();
      x = snap(x - eta * grad);
    }
    const double obj = (a - b * x * c).norm();
    if (obj < best.objective) {
      best.objective = obj;
      best.x = x;
    }
  }
  best.iterations = restarts * steps;
  return best;
}

}  // namespace mnp
