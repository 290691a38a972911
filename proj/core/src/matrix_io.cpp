#include "grq/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "grq/error.hpp"
#include "grq/trace_io.hpp"

namespace grq {
namespace {

[[noreturn]] void parse_error(int line, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ": " + what);
}

std::vector<double> split_numbers(const std::string& text, int line) {
  std::vector<double> out;
  const char* p = text.data();
  const char* end = p + text.size();
  while (true) {
    while (p != end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    double v = 0.0;
    const char* start = p;
    if (*p == '+') ++p;
    auto [next, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() ||
        (next != end && *next != ' ' && *next != '\t' && *next != '\r')) {
      const char* stop = start;
      while (stop != end && *stop != ' ' && *stop != '\t') ++stop;
      parse_error(line, "not a number: '" + std::string(start, stop) + "'");
    }
    out.push_back(v);
    p = next;
  }
  return out;
}

}  // namespace

void write_matrix(std::ostream& out, const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix must be square");
  }
  out << m.rows() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  std::ostringstream text;
  write_matrix(text, m);
  write_text_file(path, text.str());
}

Matrix parse_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_nonblank = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_nonblank()) parse_error(line_no + 1, "missing dimension line");
  const std::vector<double> header = split_numbers(line, line_no);
  if (header.size() != 1 || header[0] < 1 || header[0] != static_cast<int>(header[0])) {
    parse_error(line_no, "expected a single positive integer n");
  }
  const auto n = static_cast<Eigen::Index>(header[0]);

  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!next_nonblank()) {
      parse_error(line_no + 1, "expected " + std::to_string(n) + " rows, got " +
                                   std::to_string(i));
    }
    const std::vector<double> row = split_numbers(line, line_no);
    if (static_cast<Eigen::Index>(row.size()) != n) {
      parse_error(line_no, "expected " + std::to_string(n) + " entries, got " +
                               std::to_string(row.size()));
    }
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  if (next_nonblank()) parse_error(line_no, "trailing data after matrix");
  return m;
}

SymmetricPSDMatrix read_matrix(std::istream& in) {
  return SymmetricPSDMatrix(parse_matrix(in));
}

SymmetricPSDMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_matrix(in);
}

}  // namespace grq
