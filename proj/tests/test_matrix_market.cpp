// SPDX-License-Identifier: Apache-2.0
#include "mnp/matrix_market.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace mnp;

TEST_CASE("array files are column-major") {
  std::istringstream in(
      "%%MatrixMarket matrix array real general\n"
      "% comment\n"
      "2 2\n"
      "1\n3\n2\n4\n");
  Matrix m = read_matrix_market(in);
  CHECK(m(0, 0) == 1);
  CHECK(m(1, 0) == 3);
  CHECK(m(0, 1) == 2);
  CHECK(m(1, 1) == 4);
}

TEST_CASE("coordinate files fill the named entries") {
  std::istringstream in(
      "%%MatrixMarket matrix coordinate real general\n"
      "2 2 1\n"
      "1 1 5\n");
  Matrix m = read_matrix_market(in);
  CHECK(m(0, 0) == 5);
  CHECK(m(0, 1) == 0);
  CHECK(m(1, 0) == 0);
  CHECK(m(1, 1) == 0);
}

TEST_CASE("symmetric array files mirror the lower triangle") {
  std::istringstream in(
      "%%MatrixMarket matrix array real symmetric\n"
      "2 2\n"
      "1\n2\n3\n");
  Matrix m = read_matrix_market(in);
  CHECK(m(0, 0) == 1);
  CHECK(m(1, 0) == 2);
  CHECK(m(0, 1) == 2);
  CHECK(m(1, 1) == 3);
}

TEST_CASE("round trip is bit-exact") {
  Matrix m = test_support::gaussian(8, 8, 42);
  std::ostringstream out;
  write_matrix_market(out, m);
  std::istringstream in(out.str());
  Matrix back = read_matrix_market(in);
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) CHECK(back(i, j) == m(i, j));
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream bad_banner("%%NotMarket matrix array real general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(read_matrix_market(bad_banner), ParseError);

  std::istringstream bad_field(
      "%%MatrixMarket matrix array complex general\n2 2\n1\n2\n3\n4\n");
  CHECK_THROWS_AS(read_matrix_market(bad_field), ParseError);

  std::istringstream truncated("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n");
  try {
    read_matrix_market(truncated);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 5);
  }

  std::istringstream bad_value("%%MatrixMarket matrix array real general\n2 1\n1\nx\n");
  try {
    read_matrix_market(bad_value);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line_number == 4);
  }

  std::istringstream bad_coord(
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 5\n");
  CHECK_THROWS_AS(read_matrix_market(bad_coord), ParseError);
}
