#include "grq/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "grq/error.hpp"

namespace grq {
namespace {

using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ordered_json number_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

ordered_json to_json(const MetaValue& value) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return number_or_null(v);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          ordered_json arr = ordered_json::array();
          for (double x : v) arr.push_back(number_or_null(x));
          return arr;
        } else {
          return ordered_json(v);
        }
      },
      value);
}

ordered_json parse_json(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, end);
}

TraceMeta trace_meta(const ConvergenceTrace& trace) {
  const SolverConfig& cfg = trace.config;
  TraceMeta meta;
  meta["method"] = trace.method;
  meta["status"] = std::string(to_string(trace.status));
  meta["n"] = static_cast<std::int64_t>(trace.n);
  meta["k"] = static_cast<std::int64_t>(trace.k);
  meta["iterations"] = static_cast<std::int64_t>(trace.iterations());
  meta["d0"] = trace.d0;
  meta["f_star"] = trace.f_star;
  meta["delta"] = trace.delta;
  meta["gamma"] = trace.gamma;
  meta["bound_eta"] = trace.bound_eta;
  if (trace.method == "rsd") meta["rule"] = std::string(to_string(cfg.step_rule));
  if (cfg.step_rule == StepRule::FixedEta) meta["eta"] = cfg.eta;
  meta["max_iters"] = static_cast<std::int64_t>(cfg.max_iters);
  meta["dist_tol"] = cfg.dist_tol;
  meta["fval_tol"] = cfg.fval_tol;
  meta["seed"] = static_cast<std::int64_t>(cfg.seed);
  meta["noise_sigma"] = cfg.noise_sigma;
  return meta;
}

std::string trace_to_json(const ConvergenceTrace& trace, const TraceMeta& extra) {
  ordered_json doc;
  ordered_json meta = ordered_json::object();
  TraceMeta merged = trace_meta(trace);
  for (const auto& [key, value] : extra) merged[key] = value;
  for (const auto& [key, value] : merged) meta[key] = to_json(value);
  doc["meta"] = std::move(meta);
  doc["columns"] = ConvergenceTrace::column_names();
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (double v : trace.row_values(i)) row.push_back(number_or_null(v));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  if (!trace.iterates.empty()) {
    ordered_json iterates = ordered_json::array();
    for (const Matrix& x : trace.iterates) {
      ordered_json mat = ordered_json::array();
      for (Eigen::Index i = 0; i < x.rows(); ++i) {
        ordered_json r = ordered_json::array();
        for (Eigen::Index j = 0; j < x.cols(); ++j) r.push_back(x(i, j));
        mat.push_back(std::move(r));
      }
      iterates.push_back(std::move(mat));
    }
    doc["iterates"] = std::move(iterates);
  }
  return doc.dump(1) + "\n";
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out;
  const auto& names = ConvergenceTrace::column_names();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j > 0) out += ',';
    out += names[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < trace.rows.size(); ++i) {
    const std::vector<double> values = trace.row_values(i);
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j > 0) out += ',';
      if (std::isfinite(values[j])) out += format_double(values[j]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TraceTable parse_trace_json(const std::string& text) {
  const ordered_json doc = parse_json(text);
  TraceTable table;
  try {
    table.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& row : doc.at("rows")) {
      std::vector<double> values;
      for (const auto& cell : row) {
        values.push_back(cell.is_null() ? kNaN : cell.get<double>());
      }
      table.rows.push_back(std::move(values));
    }
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return table;
}

TraceTable parse_trace_csv(const std::string& text) {
  TraceTable table;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  if (!std::getline(in, line)) {
    throw Error(ErrorCode::ParseError, "line 1: missing header");
  }
  ++line_no;
  table.columns = split(line);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() != table.columns.size()) {
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": wrong field count");
    }
    std::vector<double> values;
    for (const std::string& c : cells) {
      if (c.empty()) {
        values.push_back(kNaN);
        continue;
      }
      double v = 0.0;
      auto [end, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || end != c.data() + c.size()) {
        throw Error(ErrorCode::ParseError,
                    "line " + std::to_string(line_no) + ": bad number '" + c + "'");
      }
      values.push_back(v);
    }
    table.rows.push_back(std::move(values));
  }
  return table;
}

std::vector<Matrix> parse_trace_iterates(const std::string& text) {
  const ordered_json doc = parse_json(text);
  std::vector<Matrix> out;
  if (!doc.contains("iterates")) return out;
  try {
    for (const auto& mat : doc.at("iterates")) {
      const auto rows = static_cast<Eigen::Index>(mat.size());
      const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(mat[0].size());
      Matrix x(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
          x(i, j) = mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                        .get<double>();
        }
      }
      out.push_back(std::move(x));
    }
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return out;
}

}  // namespace grq
