// SPDX-License-Identifier: Apache-2.0
#include "mnp/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mnp {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

struct LineReader {
  std::istream& in;
  long line_number = 0;

  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line_number;
      if (!out.empty() && out.back() == '\r') out.pop_back();
      return true;
    }
    return false;
  }

  // Skips % comment lines and blank lines.
  bool next_data(std::string& out) {
    while (next(out)) {
      const auto pos = out.find_first_not_of(" \t");
      if (pos == std::string::npos) continue;
      if (out[pos] == '%') continue;
      return true;
    }
    return false;
  }
};

double parse_value(const std::string& token, long line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ParseError("not a real number: '" + token + "'", line);
  }
  if (used != token.size()) throw ParseError("trailing characters in number: '" + token + "'", line);
  return v;
}

}  // namespace

Matrix read_matrix_market(std::istream& in) {
  LineReader reader{in};
  std::string line;
  if (!reader.next(line)) throw ParseError("empty file", 0);

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket")
    throw ParseError("missing %%MatrixMarket banner", reader.line_number);
  if (lower(object) != "matrix")
    throw ParseError("unsupported object '" + object + "'", reader.line_number);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "array" && format != "coordinate")
    throw ParseError("unsupported format '" + format + "'", reader.line_number);
  if (field != "real")
    throw ParseError("unsupported field '" + field + "' (only real is accepted)",
                     reader.line_number);
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError("unsupported symmetry '" + symmetry + "'", reader.line_number);
  const bool symmetric = symmetry == "symmetric";

  if (!reader.next_data(line)) throw ParseError("missing size line", reader.line_number);
  std::istringstream size_line(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(size_line >> rows >> cols)) throw ParseError("malformed size line", reader.line_number);
  if (format == "coordinate" && !(size_line >> nnz))
    throw ParseError("coordinate size line needs an entry count", reader.line_number);
  if (rows < 1 || cols < 1) throw ParseError("matrix dimensions must be positive",
                                             reader.line_number);
  if (symmetric && rows != cols)
    throw ParseError("symmetric matrices must be square", reader.line_number);

  Matrix m = Matrix::Zero(rows, cols);
  if (format == "array") {
    // Column-major scan; symmetric files store the lower triangle only.
    long expected = symmetric ? rows * (rows + 1) / 2 : rows * cols;
    long count = 0;
    long i = 0, j = 0;
    if (symmetric) i = j;
    while (count < expected) {
      if (!reader.next_data(line))
        throw ParseError("file ends after " + std::to_string(count) + " of " +
                             std::to_string(expected) + " entries",
                         reader.line_number);
      std::istringstream ls(line);
      std::string token;
      while (ls >> token) {
        if (count >= expected)
          throw ParseError("more entries than the size line announces", reader.line_number);
        const double v = parse_value(token, reader.line_number);
        m(i, j) = v;
        if (symmetric) m(j, i) = v;
        ++count;
        if (++i == rows) {
          ++j;
          i = symmetric ? j : 0;
        }
      }
    }
  } else {
    for (long e = 0; e < nnz; ++e) {
      if (!reader.next_data(line))
        throw ParseError("file ends after " + std::to_string(e) + " of " + std::to_string(nnz) +
                             " entries",
                         reader.line_number);
      std::istringstream ls(line);
      long i = 0, j = 0;
      std::string token;
      if (!(ls >> i >> j >> token))
        throw ParseError("malformed coordinate entry", reader.line_number);
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw ParseError("coordinate (" + std::to_string(i) + ", " + std::to_string(j) +
                             ") outside a " + std::to_string(rows) + "x" + std::to_string(cols) +
                             " matrix",
                         reader.line_number);
      const double v = parse_value(token, reader.line_number);
      m(i - 1, j - 1) += v;
      if (symmetric && i != j) m(j - 1, i - 1) += v;
    }
  }
  return m;
}

Matrix read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const Matrix& m) {
  require_matrix(m, "write_matrix_market: M");
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << " " << m.cols() << "\n";
  char buffer[64];
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) {
      std::snprintf(buffer, sizeof buffer, "%.17g", m(i, j));
      out << buffer << "\n";
    }
}

void write_matrix_market_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_matrix_market(out, m);
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace mnp
