// SPDX-License-Identifier: Apache-2.0
#include "mnp/secular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mnp {

void validate(const SecularProblem& p) {
  require(p.rho > 0.0 && std::isfinite(p.rho), "secular: rho must be positive and finite");
  for (const auto& t : p.terms) {
    require(std::isfinite(t.a), "secular: coefficient a is not finite");
    require(t.sigma > 0.0 && std::isfinite(t.sigma), "secular: sigma must be positive and finite");
  }
}

double secular_eval(const SecularProblem& p, double lambda) {
  double sum = 0.0;
  for (const auto& t : p.terms) {
    const double denom = t.sigma + lambda / t.sigma;
    if (denom == 0.0)
      throw PoleError("secular_eval: lambda = " + std::to_string(lambda) +
                      " is a pole (sigma^2 = " + std::to_string(t.sigma * t.sigma) + ")");
    const double q = t.a / denom;
    sum += q * q;
  }
  return sum;
}

namespace {

// d/dlambda of f; strictly negative on [0, inf) for nonzero problems.
double secular_deriv(const SecularProblem& p, double lambda) {
  double sum = 0.0;
  for (const auto& t : p.terms) {
    const double s2 = t.sigma * t.sigma;
    const double denom = s2 + lambda;
    sum += -2.0 * t.a * t.a * s2 / (denom * denom * denom);
  }
  return sum;
}

}  // namespace

double largest_secular_root(const SecularProblem& p) {
  validate(p);
  const double target = p.rho * p.rho;
  const double f0 = secular_eval(p, 0.0);
  if (!(f0 > target))
    throw ContractError("largest_secular_root: interior case (f(0) <= rho^2) must be handled "
                        "by the caller");

  // Bracket: f(lo) >= target >= f(hi).
  double lo = 0.0;
  double hi = 1.0;
  for (const auto& t : p.terms) hi = std::max(hi, t.sigma * t.sigma);
  while (secular_eval(p, hi) > target) hi *= 2.0;

  const double tol_res = 1e-12 * target;
  double lambda = lo;
  double best = lo;
  double best_res = std::abs(f0 - target);

  for (int iter = 0; iter < 200; ++iter) {
    const double f = secular_eval(p, lambda);
    const double res = f - target;
    if (std::abs(res) < best_res) {
      best = lambda;
      best_res = std::abs(res);
    }
    if (std::abs(res) <= tol_res) return lambda;
    if (res > 0.0)
      lo = lambda;
    else
      hi = lambda;
    if (hi - lo <= 1e-15 * (1.0 + lambda)) break;

    // Newton on g = 1/sqrt(f) - 1/rho; 1/sqrt(f) is nearly linear in lambda.
    const double fp = secular_deriv(p, lambda);
    double next = std::numeric_limits<double>::quiet_NaN();
    if (fp < 0.0) {
      const double g = 1.0 / std::sqrt(f) - 1.0 / p.rho;
      const double gp = -0.5 * fp / (f * std::sqrt(f));
      next = lambda - g / gp;
    }
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lambda = next;
  }
  return best;
}

}  // namespace mnp
