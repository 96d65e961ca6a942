// SPDX-License-Identifier: Apache-2.0
//
// The secular equation f(lambda) = sum a_ij^2 / (sigma_ij + lambda/sigma_ij)^2
// = rho^2 whose largest root certifies the norm-ball solution.
#pragma once

#include "mnp/types.hpp"

#include <vector>

namespace mnp {

struct SecularProblem {
  struct Term {
    double a;      // numerator coefficient
    double sigma;  // positive singular-value product
  };
  std::vector<Term> terms;
  double rho = 0.0;  // positive ball radius
};

void validate(const SecularProblem& p);

/// f(lambda) = sum a^2 / (sigma + lambda/sigma)^2.  Throws PoleError when a
/// denominator vanishes (lambda = -sigma^2).
double secular_eval(const SecularProblem& p, double lambda);

/// Largest real root of f(lambda) = rho^2, which on the boundary case
/// f(0) > rho^2 is the unique nonnegative one (f decreases strictly to 0 on
/// [0, inf)).  Newton on 1/sqrt(f) - 1/rho, safeguarded by bisection.
/// Throws ContractError for the interior case f(0) <= rho^2.
double largest_secular_root(const SecularProblem& p);

}  // namespace mnp
