#pragma once

// Trace files: JSON {meta, columns, rows[, iterates]} and a CSV mirror with
// the same columns. NaN is written as null (JSON) or an empty field (CSV).

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "grq/solvers.hpp"

namespace grq {

/// Shortest decimal that reads back to the same double ("nan", "inf",
/// "-inf" for non-finite values).
std::string format_double(double value);

using MetaValue =
    std::variant<bool, std::int64_t, double, std::string, std::vector<double>>;
using TraceMeta = std::map<std::string, MetaValue>;

/// Run description merged into the "meta" object next to the fields
/// taken from the trace itself (method, rule, status, n, k, d0, ...).
TraceMeta trace_meta(const ConvergenceTrace& trace);

std::string trace_to_json(const ConvergenceTrace& trace, const TraceMeta& extra);
std::string trace_to_csv(const ConvergenceTrace& trace);

void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Numeric table read back from either format; null / empty cells are NaN.
struct TraceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

TraceTable parse_trace_json(const std::string& text);
TraceTable parse_trace_csv(const std::string& text);

/// Stored representatives of a JSON trace (empty without --store-iterates).
std::vector<Matrix> parse_trace_iterates(const std::string& text);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace grq
