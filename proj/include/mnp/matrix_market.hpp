// SPDX-License-Identifier: Apache-2.0
//
// MatrixMarket dense I/O: reads real array and coordinate files (general or
// symmetric), writes array/general with round-trippable %.17g entries.
#pragma once

#include "mnp/types.hpp"

#include <iosfwd>
#include <string>

namespace mnp {

Matrix read_matrix_market(std::istream& in);
Matrix read_matrix_market_file(const std::string& path);

void write_matrix_market(std::ostream& out, const Matrix& m);
void write_matrix_market_file(const std::string& path, const Matrix& m);

}  // namespace mnp
