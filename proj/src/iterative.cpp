// SPDX-License-Identifier: Apache-2.0
#include "mnp/iterative.hpp"

#include "mnp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mnp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct FramePrecomp {
  SvdFactors svd_b;
  SvdFactors svd_c;
  Matrix sigma;  // s x t grid of singular-value products
  Index s = 0;
  Index t = 0;
};

FramePrecomp precompute(const Matrix& b, const Matrix& c) {
  FramePrecomp fp;
  fp.svd_b = svd(b);
  fp.svd_c = svd(c);
  fp.s = fp.svd_b.numerical_rank;
  fp.t = fp.svd_c.numerical_rank;
  fp.sigma = fp.svd_b.supported() * fp.svd_c.supported().transpose();
  return fp;
}

// argmin_X ||A' - B X C||^2 + lambda ||X||^2, written on the reduced blocks
// as x_ij = a_ij / (sigma_ij + lambda / sigma_ij); free blocks vanish.
Matrix penalized_step(const FramePrecomp& fp, const Matrix& a_prime, double lambda) {
  Matrix at = fp.svd_b.u.transpose() * a_prime * fp.svd_c.v;
  Matrix x11(fp.s, fp.t);
  for (Index i = 0; i < fp.s; ++i)
    for (Index j = 0; j < fp.t; ++j)
      x11(i, j) = at(i, j) / (fp.sigma(i, j) + lambda / fp.sigma(i, j));
  return fp.svd_b.v.leftCols(fp.s) * x11 * fp.svd_c.u.leftCols(fp.t).transpose();
}

double predicted_delta(const FramePrecomp& fp, const Matrix& b, const Matrix& c, double lambda) {
  const bool full_rank = fp.s == b.cols() && fp.t == c.rows() && fp.s > 0 && fp.t > 0;
  if (!full_rank) return kNaN;
  const double lo = fp.svd_b.supported()(fp.s - 1) * fp.svd_c.supported()(fp.t - 1);
  const double hi = fp.svd_b.singular_values(0) * fp.svd_c.singular_values(0);
  return 1.0 / (lambda / (2.0 * lo * lo) + hi * hi / (2.0 * lambda));
}

void validate_square_if_needed(const ConstraintSpec& spec, Index p, Index q) {
  if (spec.kind == ConstraintKind::nonnegative) return;
  require(p == q, std::string("constraint '") + to_string(spec.kind) +
                      "' needs a square X, but X is " + std::to_string(p) + "x" +
                      std::to_string(q));
  if (spec.kind == ConstraintKind::eigenvector) {
    require(spec.eigvec.has_value(), "eigenvector constraint needs a vector");
    require(spec.eigvec->size() == p, "eigenvector length must match the order of X");
  }
}

struct Loop {
  const Matrix& a;
  const Matrix& b;
  const Matrix& c;
  const FramePrecomp& fp;
  const IterOptions& opts;
  double lambda;
  ConvergenceReport report;

  double forward_error(const Matrix& x) const {
    if (!opts.forward_error_reference) return kNaN;
    const Matrix& ref = *opts.forward_error_reference;
    return (x - ref).norm() / ref.norm();
  }

  // Returns true when the loop should stop after this transition.
  bool account(Index k, const Matrix& x_new, const Matrix& z_new, double step_x, double step_z,
               const Matrix& kkt_lhs) {
    const double fe = forward_error(x_new);
    if (opts.record_history) {
      IterationRecord rec;
      rec.iter = k + 1;
      rec.objective = (a - b * x_new * c).norm();
      rec.step_x = step_x;
      rec.step_z = step_z;
      rec.kkt_residual =
          (kkt_lhs - b.transpose() * (b * x_new * c - a) * c.transpose()).norm();
      rec.dist_sq = kNaN;
      if (opts.tracked_reference) {
        const auto& [xr, zr] = *opts.tracked_reference;
        rec.dist_sq = (x_new - xr).squaredNorm() + (z_new - zr).squaredNorm();
      }
      rec.forward_error = fe;
      report.history.push_back(rec);
    }
    report.iterations = k + 1;
    report.final_step_norm = step_x + step_z;
    if (opts.forward_error_target && !std::isnan(fe) && fe <= *opts.forward_error_target) {
      report.termination = Termination::target_reached;
      return true;
    }
    return false;
  }
};

}  // namespace

const char* to_string(Termination t) {
  switch (t) {
    case Termination::step_tol: return "step_tol";
    case Termination::max_iters: return "max_iters";
    case Termination::target_reached: return "target_reached";
  }
  return "?";
}

double optimal_lambda(const Matrix& b, const Matrix& c) {
  require_matrix(b, "optimal_lambda: B");
  require_matrix(c, "optimal_lambda: C");
  FramePrecomp fp = precompute(b, c);
  require(fp.s > 0 && fp.t > 0, "optimal_lambda: B and C must be nonzero");
  return fp.svd_b.supported()(fp.s - 1) * fp.svd_c.supported()(fp.t - 1) *
         fp.svd_b.singular_values(0) * fp.svd_c.singular_values(0);
}

double rate_estimate(const Matrix& b, const Matrix& c) {
  require_matrix(b, "rate_estimate: B");
  require_matrix(c, "rate_estimate: C");
  FramePrecomp fp = precompute(b, c);
  if (fp.s != b.cols() || fp.t != c.rows())
    throw RankDeficiencyError("rate_estimate: guaranteed rate needs B of full column rank and C "
                              "of full row rank");
  const double kb = fp.svd_b.singular_values(0) / fp.svd_b.supported()(fp.s - 1);
  const double kc = fp.svd_c.singular_values(0) / fp.svd_c.supported()(fp.t - 1);
  return 1.0 / (kb * kc);
}

ConvergenceReport solve_iterative(const Matrix& a, const Matrix& b, const Matrix& c,
                                  const ConstraintSpec& spec, const IterOptions& opts) {
  if (is_composite(spec.kind)) return solve_iterative_multi(a, b, c, spec.expand(), opts);

  require_matrix(a, "A");
  require_matrix(b, "B");
  require_matrix(c, "C");
  require(b.rows() == a.rows(), "B: row count must match A");
  require(c.cols() == a.cols(), "C: column count must match A");
  const Index p = b.cols();
  const Index q = c.rows();
  validate_square_if_needed(spec, p, q);

  FramePrecomp fp = precompute(b, c);
  require(fp.s > 0 && fp.t > 0, "iterative solver: B and C must be nonzero");
  const double lambda = opts.lambda.value_or(
      fp.svd_b.supported()(fp.s - 1) * fp.svd_c.supported()(fp.t - 1) *
      fp.svd_b.singular_values(0) * fp.svd_c.singular_values(0));
  require(lambda > 0.0, "iterative solver: lambda must be positive");
  const Index max_iters = opts.max_iters > 0 ? opts.max_iters : 100 * std::max(p, q);

  Loop loop{a, b, c, fp, opts, lambda, {}};
  loop.report.lambda = lambda;
  const double delta = predicted_delta(fp, b, c, lambda);
  if (!std::isnan(delta)) loop.report.delta_predicted = delta;
  loop.report.termination = Termination::max_iters;

  Matrix x = opts.initial_x.value_or(Matrix::Zero(p, q));
  Matrix z = opts.initial_z.value_or(Matrix::Zero(p, q));
  require(x.rows() == p && x.cols() == q, "initial X has wrong dimensions");
  require(z.rows() == p && z.cols() == q, "initial Z has wrong dimensions");

  for (Index k = 0; k < max_iters; ++k) {
    Matrix y = project(x - z, spec);
    Matrix w = y + z;
    Matrix x_new = penalized_step(fp, a - b * w * c, lambda) + w;
    Matrix z_new = w - x_new;

    const double step_x = (x - x_new).norm();
    const double step_z = (z - z_new).norm();
    const bool hit_target = loop.account(k, x_new, z_new, step_x, step_z, lambda * z_new);
    const double x_scale = 1.0 + x.norm();
    x = std::move(x_new);
    z = std::move(z_new);
    if (hit_target) break;
    if (step_x + step_z <= opts.tol_step * x_scale) {
      loop.report.termination = Termination::step_tol;
      break;
    }
  }

  loop.report.x_star = x;
  loop.report.z_star = z;
  loop.report.objective = (a - b * x * c).norm();
  loop.report.feasibility_gap = (project(x, spec) - x).norm();
  return loop.report;
}

ConvergenceReport solve_iterative_multi(const Matrix& a, const Matrix& b, const Matrix& c,
                                        const std::vector<ConstraintSpec>& sets,
                                        const IterOptions& opts) {
  require_matrix(a, "A");
  require_matrix(b, "B");
  require_matrix(c, "C");
  require(b.rows() == a.rows(), "B: row count must match A");
  require(c.cols() == a.cols(), "C: column count must match A");
  require(!sets.empty(), "solve_iterative_multi: no constraint sets given");

  std::vector<ConstraintSpec> flat;
  for (const auto& s : sets)
    for (const auto& e : s.expand()) flat.push_back(e);
  if (flat.size() == 1) return solve_iterative(a, b, c, flat.front(), opts);

  const Index p = b.cols();
  const Index q = c.rows();
  for (const auto& s : flat) validate_square_if_needed(s, p, q);

  FramePrecomp fp = precompute(b, c);
  require(fp.s > 0 && fp.t > 0, "iterative solver: B and C must be nonzero");
  const double lambda = opts.lambda.value_or(
      fp.svd_b.supported()(fp.s - 1) * fp.svd_c.supported()(fp.t - 1) *
      fp.svd_b.singular_values(0) * fp.svd_c.singular_values(0));
  require(lambda > 0.0, "iterative solver: lambda must be positive");
  const Index max_iters = opts.max_iters > 0 ? opts.max_iters : 100 * std::max(p, q);

  Loop loop{a, b, c, fp, opts, lambda, {}};
  loop.report.lambda = lambda;
  const double delta = predicted_delta(fp, b, c, lambda);
  if (!std::isnan(delta)) loop.report.delta_predicted = delta;
  loop.report.termination = Termination::max_iters;

  // One primal copy per set: Y^i for all but the last set, W for the last.
  const std::size_t n_y = flat.size() - 1;
  Matrix w = opts.initial_x.value_or(Matrix::Zero(p, q));
  require(w.rows() == p && w.cols() == q, "initial X has wrong dimensions");
  Matrix x = w;
  Matrix z = opts.initial_z.value_or(Matrix::Zero(p, q));
  require(z.rows() == p && z.cols() == q, "initial Z has wrong dimensions");
  std::vector<Matrix> z_prime(n_y, Matrix::Zero(p, q));
  const double n_copies = static_cast<double>(flat.size());

  for (Index k = 0; k < max_iters; ++k) {
    Matrix center = w - z;
    Matrix x_new = penalized_step(fp, a - b * center * c, lambda) + center;

    std::vector<Matrix> y(n_y);
    for (std::size_t i = 0; i < n_y; ++i) y[i] = project(w - z_prime[i], flat[i]);

    Matrix avg = x_new + z;
    for (std::size_t i = 0; i < n_y; ++i) avg += y[i] + z_prime[i];
    Matrix w_new = project(avg / n_copies, flat.back());

    Matrix z_new = z + x_new - w_new;
    double step_z_sq = (z - z_new).squaredNorm();
    for (std::size_t i = 0; i < n_y; ++i) {
      Matrix zp_new = z_prime[i] + y[i] - w_new;
      step_z_sq += (z_prime[i] - zp_new).squaredNorm();
      z_prime[i] = std::move(zp_new);
    }
    const double step_x = (x - x_new).norm();
    const double step_z = std::sqrt(step_z_sq);

    // Stationarity certificate of the penalized step in this variant:
    // lambda (W_k - W_{k+1} - Z_{k+1}) = B^T (B X_{k+1} C - A) C^T.
    const bool hit_target =
        loop.account(k, x_new, z_new, step_x, step_z, lambda * (w - w_new - z_new));
    const double x_scale = 1.0 + x.norm();
    x = std::move(x_new);
    z = std::move(z_new);
    w = std::move(w_new);
    if (hit_target) break;
    if (step_x + step_z <= opts.tol_step * x_scale) {
      loop.report.termination = Termination::step_tol;
      break;
    }
  }

  loop.report.x_star = x;
  loop.report.z_star = z;
  loop.report.objective = (a - b * x * c).norm();
  double gap = 0.0;
  for (const auto& s : flat) gap = std::max(gap, (project(x, s) - x).norm());
  loop.report.feasibility_gap = gap;
  return loop.report;
}

}  // namespace mnp
