// SPDX-License-Identifier: Apache-2.0
#include "mnp/projections.hpp"

#include "mnp/generators.hpp"
#include "support.hpp"

#include <doctest.h>

#include <vector>

using namespace mnp;
using test_support::gaussian;

namespace {

Matrix two_by_two(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::vector<ConstraintSpec> simple_kinds(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Vector v = random_gaussian(n, 1, rng).col(0);
  return {
      {ConstraintKind::toeplitz, {}},      {ConstraintKind::hankel, {}},
      {ConstraintKind::circulant, {}},     {ConstraintKind::symmetric, {}},
      {ConstraintKind::skew_symmetric, {}}, {ConstraintKind::nonnegative, {}},
      {ConstraintKind::psd, {}},           {ConstraintKind::row_sum_one, {}},
      {ConstraintKind::col_sum_one, {}},   {ConstraintKind::unit_diagonal, {}},
      {ConstraintKind::eigenvector, v},
  };
}

}  // namespace

TEST_CASE("structured projections on the 2x2 example") {
  Matrix a = two_by_two(1, 2, 3, 4);
  CHECK((project_structured(a, ConstraintKind::toeplitz) - two_by_two(2.5, 2, 3, 2.5)).norm() ==
        0.0);
  CHECK((project_structured(a, ConstraintKind::hankel) - two_by_two(1, 2.5, 2.5, 4)).norm() ==
        0.0);
  CHECK((project_structured(a, ConstraintKind::circulant) -
         two_by_two(2.5, 2.5, 2.5, 2.5)).norm() == 0.0);
  CHECK_THROWS_AS(project_structured(gaussian(2, 3, 0), ConstraintKind::toeplitz),
                  ValidationError);
}

TEST_CASE("cone projections") {
  Matrix a = two_by_two(1, -2, 0, 3);
  CHECK((project_cone(a, ConstraintKind::nonnegative) - two_by_two(1, 0, 0, 3)).norm() == 0.0);

  Matrix d = two_by_two(1, 0, 0, -2);
  CHECK((project_cone(d, ConstraintKind::psd) - two_by_two(1, 0, 0, 0)).norm() <= 1e-14);

  Matrix skew = two_by_two(0, 1, -1, 0);
  CHECK(project_cone(skew, ConstraintKind::psd).norm() <= 1e-14);
  CHECK_THROWS_AS(project_cone(gaussian(2, 3, 0), ConstraintKind::psd), ValidationError);
}

TEST_CASE("affine projections") {
  CHECK((project_affine(two_by_two(2, 2, 0, 0), ConstraintKind::row_sum_one) -
         two_by_two(0.5, 0.5, 0.5, 0.5)).norm() == 0.0);
  CHECK((project_affine(two_by_two(5, 2, 2, 7), ConstraintKind::unit_diagonal) -
         two_by_two(1, 2, 2, 1)).norm() == 0.0);
  CHECK((project_affine(two_by_two(0, 2, 0, 0), ConstraintKind::symmetric) -
         two_by_two(0, 1, 1, 0)).norm() == 0.0);
}

TEST_CASE("eigenvector projection keeps compatible matrices and cuts coupling") {
  Vector e1 = Vector::Zero(2);
  e1(0) = 1.0;
  Matrix compatible = two_by_two(3, 0, 0, 5);
  CHECK((project_eigvec(compatible, e1) - compatible).norm() <= 1e-15);

  Matrix ones = two_by_two(1, 1, 1, 1);
  CHECK((project_eigvec(ones, e1) - two_by_two(1, 0, 0, 1)).norm() <= 1e-15);
  CHECK_THROWS_AS(project_eigvec(ones, Vector::Zero(2)), ValidationError);
}

TEST_CASE("eigenvector projection beats random feasible members") {
  Rng rng(21);
  Matrix a = random_gaussian(6, 6, rng);
  Vector v = random_gaussian(6, 1, rng).col(0);
  ConstraintSpec spec{ConstraintKind::eigenvector, v};
  Matrix x = project(a, spec);
  const double dist = (x - a).norm();
  for (int i = 0; i < 200; ++i) {
    Matrix y = random_member(spec, 6, rng);
    CHECK(dist <= (y - a).norm() + 1e-10);
  }
}

TEST_CASE("projections are idempotent, nonexpansive, and orthogonal on subspaces") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (const auto& spec : simple_kinds(5, seed)) {
      Matrix a = gaussian(5, 5, 100 + seed);
      Matrix b = gaussian(5, 5, 200 + seed);
      Matrix pa = project(a, spec);
      Matrix pb = project(b, spec);
      CHECK((project(pa, spec) - pa).norm() <= 1e-12 * (1.0 + pa.norm()));
      CHECK((pa - pb).norm() <= (a - b).norm() + 1e-12);
    }
    // Linear-subspace kinds are orthogonal projectors: <A - P(A), P(B)> = 0.
    Rng rng(seed);
    Vector v = random_gaussian(5, 1, rng).col(0);
    for (ConstraintKind kind :
         {ConstraintKind::toeplitz, ConstraintKind::hankel, ConstraintKind::circulant,
          ConstraintKind::symmetric, ConstraintKind::skew_symmetric,
          ConstraintKind::eigenvector}) {
      ConstraintSpec spec{kind, v};
      Matrix a = gaussian(5, 5, 300 + seed);
      Matrix b = gaussian(5, 5, 400 + seed);
      Matrix pa = project(a, spec);
      Matrix pb = project(b, spec);
      CHECK(std::abs(dot(a - pa, pb)) <= 1e-11 * (1.0 + a.norm() * b.norm()));
    }
  }
}

TEST_CASE("sampled variational optimality for every closed-form kind") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(500 + seed);
    for (const auto& spec : simple_kinds(4, seed)) {
      Matrix a = gaussian(4, 4, 600 + seed);
      Matrix x = project(a, spec);
      const double dist = (x - a).norm();
      for (int i = 0; i < 200; ++i) {
        Matrix y = random_member(spec, 4, rng);
        CHECK(dist <= (y - a).norm() + 1e-10);
      }
    }
  }
}

TEST_CASE("composite projections via alternating corrections") {
  // Nearest correlation matrix of [[1, 2], [2, 1]] is the all-ones matrix.
  Matrix a = two_by_two(1, 2, 2, 1);
  ConstraintSpec corr{ConstraintKind::correlation, {}};
  Matrix x = project_intersection(a, {corr});
  CHECK((x - two_by_two(1, 1, 1, 1)).norm() <= 1e-8);

  ConstraintSpec ds{ConstraintKind::doubly_stochastic, {}};
  Rng rng(9);
  Matrix member = random_member(ds, 5, rng);
  Matrix projected = project_intersection(member, {ds});
  CHECK((projected - member).norm() <= 1e-9);
}

TEST_CASE("composite kinds refuse the single closed-form projection entry point") {
  ConstraintSpec spec{ConstraintKind::stochastic, {}};
  CHECK_THROWS_AS(project(Matrix::Identity(3, 3), spec), ValidationError);
  CHECK(spec.expand().size() == 2);
  CHECK(ConstraintSpec{ConstraintKind::doubly_stochastic, {}}.expand().size() == 3);
  CHECK(ConstraintSpec{ConstraintKind::correlation, {}}.expand().size() == 2);
}

TEST_CASE("constraint kind names round-trip") {
  for (ConstraintKind k :
       {ConstraintKind::toeplitz, ConstraintKind::skew_symmetric, ConstraintKind::psd,
        ConstraintKind::doubly_stochastic, ConstraintKind::correlation}) {
    CHECK(constraint_kind_from_string(to_string(k)) == k);
  }
  CHECK(constraint_kind_from_string("skew_symmetric") == ConstraintKind::skew_symmetric);
  CHECK_THROWS_AS(constraint_kind_from_string("banded"), ValidationError);
}
