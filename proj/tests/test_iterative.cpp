// SPDX-License-Identifier: Apache-2.0
#include "mnp/iterative.hpp"

#include "mnp/generators.hpp"
#include "mnp/projections.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mnp;
using test_support::conditioned;
using test_support::gaussian;

namespace {

// Converged reference pair for distance-based convergence checks.
std::pair<Matrix, Matrix> reference_pair(const Matrix& a, const Matrix& b, const Matrix& c,
                                         const ConstraintSpec& spec) {
  IterOptions opts;
  opts.tol_step = 1e-14;
  opts.max_iters = 200000;
  ConvergenceReport rep = solve_iterative(a, b, c, spec, opts);
  return {rep.x_star, rep.z_star};
}

}  // namespace

TEST_CASE("optimal lambda on diagonal examples") {
  Matrix eye = Matrix::Identity(3, 3);
  CHECK(optimal_lambda(eye, eye) == doctest::Approx(1.0));

  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  Matrix c = Matrix::Zero(2, 2);
  c(0, 0) = 3.0;
  c(1, 1) = 4.0;
  CHECK(optimal_lambda(b, c) == doctest::Approx(24.0));
  CHECK_THROWS_AS(optimal_lambda(Matrix::Zero(2, 2), c), ValidationError);
}

TEST_CASE("optimal lambda matches the singular-value products") {
  Matrix b = gaussian(6, 4, 1);
  Matrix c = gaussian(4, 5, 2);
  SvdFactors fb = svd(b);
  SvdFactors fc = svd(c);
  const double expected = fb.singular_values(0) * fb.supported()(fb.numerical_rank - 1) *
                          fc.singular_values(0) * fc.supported()(fc.numerical_rank - 1);
  CHECK(optimal_lambda(b, c) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("rate estimate on diagonal examples") {
  Matrix eye = Matrix::Identity(4, 4);
  CHECK(rate_estimate(eye, eye) == doctest::Approx(1.0));

  Matrix b = Matrix::Zero(2, 2);
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  Matrix c = Matrix::Zero(2, 2);
  c(0, 0) = 1.0;
  c(1, 1) = 4.0;
  CHECK(rate_estimate(b, c) == doctest::Approx(0.125));

  Matrix wide = gaussian(3, 5, 3);  // wide, so full column rank impossible
  CHECK_THROWS_AS(rate_estimate(wide, gaussian(5, 4, 4)), RankDeficiencyError);
}

TEST_CASE("rate estimate matches condition numbers from the SVD") {
  Matrix b = conditioned(5, 5, 3.0, 5);
  Matrix c = conditioned(5, 5, 2.0, 6);
  CHECK(rate_estimate(b, c) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("identity frames make the iteration land on the projection") {
  Matrix a = gaussian(5, 5, 7);
  Matrix eye = Matrix::Identity(5, 5);
  IterOptions opts;
  opts.max_iters = 200;
  opts.tol_step = 1e-12;

  ConvergenceReport nn = solve_iterative(a, eye, eye, {ConstraintKind::nonnegative, {}}, opts);
  CHECK((nn.x_star - a.cwiseMax(0.0)).norm() <= 1e-8 * (1.0 + a.norm()));
  CHECK(nn.termination == Termination::step_tol);
  CHECK(nn.delta_predicted.has_value());
  CHECK(*nn.delta_predicted == doctest::Approx(1.0));

  ConvergenceReport tp = solve_iterative(a, eye, eye, {ConstraintKind::toeplitz, {}}, opts);
  CHECK((tp.x_star - project_structured(a, ConstraintKind::toeplitz)).norm() <=
        1e-8 * (1.0 + a.norm()));
}

TEST_CASE("planted nonnegative solution is recovered with a linear step decay") {
  Rng rng(11);
  Matrix x_true = random_member({ConstraintKind::nonnegative, {}}, 16, rng);
  Matrix b = random_conditioned(16, 16, 4.0, rng);
  Matrix c = random_conditioned(16, 16, 4.0, rng);
  Matrix a = b * x_true * c;

  IterOptions opts;
  opts.record_history = true;
  opts.tol_step = 1e-12;
  opts.max_iters = 20000;
  opts.forward_error_reference = x_true;
  ConvergenceReport rep = solve_iterative(a, b, c, {ConstraintKind::nonnegative, {}}, opts);
  CHECK((rep.x_star - x_true).norm() <= 1e-6 * x_true.norm());

  // Log step-norm decay: trailing ratios stay below one.
  const auto& h = rep.history;
  REQUIRE(h.size() >= 50);
  for (std::size_t i = h.size() - 40; i + 1 < h.size(); ++i)
    CHECK(h[i + 1].step_norm() <= h[i].step_norm() * (1.0 + 1e-9));
}

TEST_CASE("stationarity identity links the correction to the gradient at every iteration") {
  Matrix a = gaussian(6, 6, 21);
  Matrix b = conditioned(6, 6, 3.0, 22);
  Matrix c = conditioned(6, 6, 5.0, 23);
  IterOptions opts;
  opts.record_history = true;
  opts.max_iters = 500;
  ConvergenceReport rep = solve_iterative(a, b, c, {ConstraintKind::psd, {}}, opts);
  const double scale = (1.0 + a.norm()) * b.norm() * c.norm();
  for (const auto& rec : rep.history) CHECK(rec.kkt_residual <= 1e-10 * scale);
}

TEST_CASE("pair distances to the limit are Fejer monotone and contract linearly") {
  Matrix a = gaussian(8, 8, 31);
  Matrix b = conditioned(8, 8, 4.0, 32);
  Matrix c = conditioned(8, 8, 3.0, 33);
  ConstraintSpec spec{ConstraintKind::nonnegative, {}};
  auto [x_ref, z_ref] = reference_pair(a, b, c, spec);

  IterOptions opts;
  opts.record_history = true;
  opts.tracked_reference = std::make_pair(x_ref, z_ref);
  opts.tol_step = 1e-11;
  opts.max_iters = 100000;
  ConvergenceReport rep = solve_iterative(a, b, c, spec, opts);
  const double delta = rate_estimate(b, c);
  REQUIRE(rep.delta_predicted.has_value());
  CHECK(*rep.delta_predicted == doctest::Approx(delta).epsilon(1e-9));

  double prev = x_ref.squaredNorm() + z_ref.squaredNorm();  // distance of the zero start
  for (const auto& rec : rep.history) {
    CHECK(rec.dist_sq <= prev * (1.0 + 1e-12) + 1e-15);          // Fejer monotone
    CHECK(prev - (1.0 + delta) * rec.dist_sq >= -1e-9);          // linear contraction
    prev = rec.dist_sq;
  }
}

TEST_CASE("summed step norms obey the 1/(k+1) decay bound") {
  Matrix a = gaussian(6, 6, 41);
  Matrix b = conditioned(6, 6, 2.0, 42);
  Matrix c = conditioned(6, 6, 2.0, 43);
  ConstraintSpec spec{ConstraintKind::row_sum_one, {}};
  auto [x_ref, z_ref] = reference_pair(a, b, c, spec);
  const double initial = x_ref.squaredNorm() + z_ref.squaredNorm();

  IterOptions opts;
  opts.record_history = true;
  opts.tol_step = 1e-12;
  opts.max_iters = 100000;
  ConvergenceReport rep = solve_iterative(a, b, c, spec, opts);
  double prev_sq = std::numeric_limits<double>::infinity();
  for (const auto& rec : rep.history) {
    const double step_sq = rec.step_x * rec.step_x + rec.step_z * rec.step_z;
    CHECK(step_sq <= initial / static_cast<double>(rec.iter) * (1.0 + 1e-9));
    CHECK(step_sq <= prev_sq * (1.0 + 1e-9) + 1e-18);
    prev_sq = step_sq;
  }
}

TEST_CASE("every positive penalty weight reaches the same minimizer") {
  Matrix a = gaussian(6, 6, 51);
  Matrix b = conditioned(6, 6, 3.0, 52);
  Matrix c = conditioned(6, 6, 3.0, 53);
  ConstraintSpec spec{ConstraintKind::unit_diagonal, {}};
  const double lambda0 = optimal_lambda(b, c);

  IterOptions tight;
  tight.tol_step = 1e-12;
  tight.max_iters = 100000;
  ConvergenceReport base = solve_iterative(a, b, c, spec, tight);
  for (double factor : {0.1, 10.0}) {
    IterOptions opts = tight;
    opts.lambda = factor * lambda0;
    ConvergenceReport rep = solve_iterative(a, b, c, spec, opts);
    CHECK((rep.x_star - base.x_star).norm() <= 1e-6 * (1.0 + base.x_star.norm()));
  }
}

TEST_CASE("random starts converge to the same minimizer") {
  Matrix a = gaussian(6, 6, 61);
  Matrix b = conditioned(6, 6, 2.5, 62);
  Matrix c = conditioned(6, 6, 2.5, 63);
  Rng rng(64);
  Vector v = random_gaussian(6, 1, rng).col(0);
  ConstraintSpec spec{ConstraintKind::eigenvector, v};

  IterOptions tight;
  tight.tol_step = 1e-12;
  tight.max_iters = 100000;
  ConvergenceReport base = solve_iterative(a, b, c, spec, tight);
  for (int i = 0; i < 3; ++i) {
    IterOptions opts = tight;
    opts.initial_x = random_gaussian(6, 6, rng);
    opts.initial_z = random_gaussian(6, 6, rng);
    ConvergenceReport rep = solve_iterative(a, b, c, spec, opts);
    CHECK((rep.x_star - base.x_star).norm() <= 1e-6 * (1.0 + base.x_star.norm()));
  }
}

TEST_CASE("variational certificate holds against sampled feasible points") {
  Matrix a = gaussian(5, 5, 71);
  Matrix b = conditioned(5, 5, 2.0, 72);
  Matrix c = conditioned(5, 5, 2.0, 73);
  ConstraintSpec spec{ConstraintKind::psd, {}};
  IterOptions opts;
  opts.tol_step = 1e-13;
  opts.max_iters = 200000;
  ConvergenceReport rep = solve_iterative(a, b, c, spec, opts);
  Rng rng(74);
  for (int i = 0; i < 200; ++i) {
    Matrix y = random_member(spec, 5, rng);
    CHECK(dot(rep.z_star, y - rep.x_star) >= -1e-7 * (1.0 + y.norm() * rep.z_star.norm()));
  }
}

TEST_CASE("max-iteration exhaustion is reported, not thrown") {
  Matrix a = gaussian(5, 5, 81);
  Matrix b = conditioned(5, 5, 2.0, 82);
  Matrix c = conditioned(5, 5, 2.0, 83);
  IterOptions opts;
  opts.max_iters = 3;
  ConvergenceReport rep = solve_iterative(a, b, c, {ConstraintKind::nonnegative, {}}, opts);
  CHECK(rep.termination == Termination::max_iters);
  CHECK(rep.iterations == 3);
}

TEST_CASE("rank-deficient frames still run without a predicted rate") {
  Matrix a = gaussian(5, 5, 91);
  Matrix b = test_support::gaussian_rank(5, 5, 3, 92);
  Matrix c = test_support::gaussian_rank(5, 5, 3, 93);
  IterOptions opts;
  opts.tol_step = 1e-11;
  opts.max_iters = 50000;
  ConvergenceReport rep = solve_iterative(a, b, c, {ConstraintKind::symmetric, {}}, opts);
  CHECK_FALSE(rep.delta_predicted.has_value());
  CHECK(rep.feasibility_gap <= 1e-8 * (1.0 + rep.x_star.norm()));
}

TEST_CASE("composite single-set requests forward to the multi-set variant") {
  Matrix a = gaussian(4, 4, 101);
  Matrix eye = Matrix::Identity(4, 4);
  IterOptions opts;
  opts.tol_step = 1e-11;
  opts.max_iters = 20000;
  ConvergenceReport rep = solve_iterative(a, eye, eye, {ConstraintKind::correlation, {}}, opts);
  CHECK(rep.x_star.diagonal().isApproxToConstant(1.0, 1e-7));
}

TEST_CASE("multi-set: nearest correlation matrix with identity frames") {
  Matrix a(2, 2);
  a << 1, 2, 2, 1;
  Matrix eye = Matrix::Identity(2, 2);
  IterOptions opts;
  opts.tol_step = 1e-12;
  opts.max_iters = 50000;
  ConvergenceReport rep = solve_iterative_multi(
      a, eye, eye, {{ConstraintKind::unit_diagonal, {}}, {ConstraintKind::psd, {}}}, opts);
  Matrix expected(2, 2);
  expected << 1, 1, 1, 1;
  CHECK((rep.x_star - expected).norm() <= 1e-6);
}

TEST_CASE("multi-set: doubly stochastic fixed point stays put") {
  Rng rng(111);
  Matrix a = random_member({ConstraintKind::doubly_stochastic, {}}, 5, rng);
  Matrix eye = Matrix::Identity(5, 5);
  IterOptions opts;
  opts.tol_step = 1e-12;
  opts.max_iters = 50000;
  ConvergenceReport rep =
      solve_iterative_multi(a, eye, eye, {{ConstraintKind::doubly_stochastic, {}}}, opts);
  CHECK((rep.x_star - a).norm() <= 1e-6 * (1.0 + a.norm()));
}

TEST_CASE("multi-set: planted doubly stochastic solution is recovered") {
  Rng rng(121);
  Matrix x_true = random_member({ConstraintKind::doubly_stochastic, {}}, 8, rng);
  Matrix b = random_conditioned(8, 8, 3.0, rng);
  Matrix c = random_conditioned(8, 8, 3.0, rng);
  Matrix a = b * x_true * c;
  IterOptions opts;
  opts.tol_step = 1e-12;
  opts.max_iters = 100000;
  ConvergenceReport rep =
      solve_iterative_multi(a, b, c, {{ConstraintKind::doubly_stochastic, {}}}, opts);
  CHECK((rep.x_star - x_true).norm() <= 1e-5 * x_true.norm());
  CHECK(rep.feasibility_gap <= 1e-7);
}

TEST_CASE("non-square structured constraints are rejected") {
  Matrix a = gaussian(4, 5, 131);
  Matrix b = gaussian(4, 3, 132);
  Matrix c = gaussian(5, 5, 133);  // X would be 3 x 5
  CHECK_THROWS_AS(solve_iterative(a, b, c, {ConstraintKind::toeplitz, {}}, {}),
                  ValidationError);
}
