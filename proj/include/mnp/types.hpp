// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace mnp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad dimensions, non-finite entries, out-of-range parameters.
struct ValidationError : Error {
  using Error::Error;
};

/// A closed-form solver was asked for a problem that needs full-rank data.
struct RankDeficiencyError : Error {
  using Error::Error;
};

/// An equality constraint admits no solution.
struct InfeasibleError : Error {
  using Error::Error;
};

/// Evaluation of the secular function at one of its poles.
struct PoleError : Error {
  using Error::Error;
};

/// A precondition of the called routine was violated by the caller.
struct ContractError : Error {
  using Error::Error;
};

/// An oracle iteration diverged.
struct DivergenceError : Error {
  using Error::Error;
};

/// File-level I/O failure.
struct IoError : Error {
  using Error::Error;
};

/// Malformed file contents; carries the 1-based line number.
struct ParseError : IoError {
  ParseError(const std::string& what, long line)
      : IoError(what + " (line " + std::to_string(line) + ")"), line_number(line) {}
  long line_number;
};

inline bool is_finite(const Matrix& a) { return a.allFinite(); }

/// Validates that `a` is a nonempty matrix of finite entries.
inline void require_matrix(const Matrix& a, const char* name) {
  if (a.rows() < 1 || a.cols() < 1)
    throw ValidationError(std::string(name) + ": matrix must have at least one row and column");
  if (!a.allFinite())
    throw ValidationError(std::string(name) + ": matrix contains NaN or Inf entries");
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

inline double frobenius(const Matrix& a) { return a.norm(); }

/// Frobenius inner product tr(A^T B).
inline double dot(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

}  // namespace mnp
