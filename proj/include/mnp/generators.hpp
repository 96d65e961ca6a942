// SPDX-License-Identifier: Apache-2.0
//
// Seeded random instance generation shared by the benchmark harness and the
// test suites.
#pragma once

#include "mnp/projections.hpp"
#include "mnp/types.hpp"

#include <cstdint>
#include <random>

namespace mnp {

using Rng = std::mt19937_64;

Matrix random_gaussian(Index rows, Index cols, Rng& rng);

/// Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix).
Matrix random_orthogonal(Index n, Rng& rng);

/// Random matrix with prescribed spectral condition number: singular values
/// interpolate [1, cond], factors Haar orthogonal.
Matrix random_conditioned(Index rows, Index cols, double cond, Rng& rng);

/// Random element of the given constraint set (exact member up to rounding;
/// doubly stochastic via Sinkhorn sweeps).
Matrix random_member(const ConstraintSpec& spec, Index n, Rng& rng);

}  // namespace mnp
