// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mnp/generators.hpp"
#include "mnp/types.hpp"

#include <cstdint>

namespace test_support {

inline mnp::Matrix gaussian(mnp::Index rows, mnp::Index cols, std::uint64_t seed) {
  mnp::Rng rng(seed);
  return mnp::random_gaussian(rows, cols, rng);
}

inline mnp::Matrix conditioned(mnp::Index rows, mnp::Index cols, double cond,
                               std::uint64_t seed) {
  mnp::Rng rng(seed);
  return mnp::random_conditioned(rows, cols, cond, rng);
}

/// Gaussian matrix of the given rank (product of thin factors).
inline mnp::Matrix gaussian_rank(mnp::Index rows, mnp::Index cols, mnp::Index rank,
                                 std::uint64_t seed) {
  mnp::Rng rng(seed);
  return mnp::random_gaussian(rows, rank, rng) * mnp::random_gaussian(rank, cols, rng);
}

inline double orthogonality_defect(const mnp::Matrix& q) {
  return (q.transpose() * q - mnp::Matrix::Identity(q.cols(), q.cols())).norm();
}

}  // namespace test_support
