#pragma once

// Dense text format: a first line holding n, then n lines of n
// whitespace-separated decimals. Numbers are written as shortest
// round-trip decimals.

#include <filesystem>
#include <iosfwd>

#include "grq/rayleigh.hpp"

namespace grq {

/// Writes `m` (must be square).
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Parses a square matrix. Throws ParseError naming the 1-based line of the
/// first malformed row.
Matrix parse_matrix(std::istream& in);

/// Loads and validates a matrix: NotSymmetric for asymmetric input,
/// NotPositiveSemiDefinite for indefinite input, IoError if unreadable.
SymmetricPSDMatrix read_matrix(const std::filesystem::path& path);
SymmetricPSDMatrix read_matrix(std::istream& in);

}  // namespace grq
