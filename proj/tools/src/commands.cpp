#include "grq_cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grq/certificates.hpp"
#include "grq/error.hpp"
#include "grq/matrix_io.hpp"
#include "grq/problem.hpp"
#include "grq/sampling.hpp"
#include "grq/solvers.hpp"
#include "grq/trace_io.hpp"

namespace grq::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int n = 0;
  int k = 1;
  std::string spectrum;
  std::string spectrum_gen = "linear";
  double delta = 1.0;
  bool rotate = false;
  std::uint64_t seed = 0;
  std::string rule = "cos";
  std::optional<double> eta;
  std::optional<double> init_angle;
  int max_iters = 10000;
  double tol = 1e-10;
  double fval_tol = 1e-14;
  double noise_sigma = 0.0;
  std::string out;
  std::string format = "json";
  bool enforce_bounds = false;
  bool store_iterates = false;
  bool baseline = false;
  std::string matrix;

  // certify
  int instances = 1000;
  bool region = false;
  int samples = 500;
  bool counterexample = false;
  std::vector<double> eps = {0.0};

  // sweep
  std::string deltas = "0.1,1,5";
  int jobs = 0;
};

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string item = text.substr(pos, comma - pos);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw UsageError(std::string(flag) + ": cannot parse '" + item + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

void add_problem_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "Ambient dimension");
  cmd->add_option("--k", o.k, "Subspace dimension");
  cmd->add_option("--spectrum", o.spectrum, "Descending eigenvalues, comma separated");
  cmd->add_option("--spectrum-gen", o.spectrum_gen, "Spectrum generator")
      ->check(CLI::IsMember({"linear", "geometric", "clustered"}));
  cmd->add_option("--delta", o.delta, "Eigengap of the clustered generator");
  cmd->add_flag("--rotate", o.rotate, "Conjugate by a seeded random orthogonal matrix");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--matrix", o.matrix, "Load A from a text matrix file");
}

void add_solver_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--rule", o.rule, "Step rule")
      ->check(CLI::IsMember({"adaptive", "cos", "sd-fixed", "eta"}));
  cmd->add_option("--eta", o.eta, "Step size for --rule eta");
  cmd->add_option("--init-angle", o.init_angle,
                  "dist(X0, V_alpha); a random point when omitted");
  cmd->add_option("--max-iters", o.max_iters, "Iteration cap");
  cmd->add_option("--tol", o.tol, "Distance tolerance (radians)");
  cmd->add_option("--fval-tol", o.fval_tol, "Optimality-gap tolerance");
  cmd->add_option("--noise-sigma", o.noise_sigma, "Gaussian matvec noise");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--format", o.format, "Trace format")
      ->check(CLI::IsMember({"json", "csv", "both"}));
  cmd->add_flag("--enforce-bounds", o.enforce_bounds,
                "Exit 2 when a recorded bound is violated");
  cmd->add_flag("--store-iterates", o.store_iterates,
                "Store representatives in JSON traces");
  cmd->add_flag("--baseline", o.baseline, "Also run subspace iteration");
}

Problem build_problem(const Options& o) {
  if (!o.matrix.empty()) {
    SymmetricPSDMatrix a = read_matrix(fs::path(o.matrix));
    if (o.n != 0 && o.n != a.n()) {
      throw UsageError("--n does not match the matrix file");
    }
    SpectralData spec = spectral_data(a, o.k);
    std::vector<double> lambda(spec.eigenvalues.data(),
                               spec.eigenvalues.data() + spec.eigenvalues.size());
    return Problem{std::move(a), std::move(spec), std::move(lambda)};
  }
  ProblemSpec ps;
  ps.k = o.k;
  ps.rotate = o.rotate;
  ps.seed = o.seed;
  ps.delta = o.delta;
  if (!o.spectrum.empty()) {
    ps.spectrum = parse_list(o.spectrum, "--spectrum");
    ps.n = static_cast<Eigen::Index>(ps.spectrum.size());
    if (o.n != 0 && o.n != ps.n) {
      throw UsageError("--n does not match the length of --spectrum");
    }
  } else {
    if (o.n < 2) throw UsageError("--n (>= 2) is required without --spectrum");
    ps.n = o.n;
    ps.generator = parse_spectrum_generator(o.spectrum_gen);
  }
  return generate_problem(ps);
}

StepRule parse_rule(const std::string& name) {
  if (name == "adaptive") return StepRule::AdaptiveAxOverGamma;
  if (name == "cos") return StepRule::CosD0OverGamma;
  if (name == "sd-fixed") return StepRule::FixedOneOverGamma;
  return StepRule::FixedEta;
}

SolverConfig solver_config(const Options& o, std::ostream& err,
                           const SpectralData& spec) {
  SolverConfig cfg;
  cfg.step_rule = parse_rule(o.rule);
  cfg.max_iters = o.max_iters;
  cfg.dist_tol = o.tol;
  cfg.fval_tol = o.fval_tol;
  cfg.seed = o.seed;
  cfg.noise_sigma = o.noise_sigma;
  cfg.record_bounds = true;
  cfg.store_iterates = o.store_iterates;
  if (cfg.step_rule == StepRule::FixedEta) {
    if (!o.eta) throw UsageError("--rule eta requires --eta");
    cfg.eta = *o.eta;
  } else if (o.eta && cfg.step_rule == StepRule::FixedOneOverGamma &&
             spec.gamma > 0.0 &&
             std::abs(*o.eta * spec.gamma - 1.0) > 1e-12) {
    err << "warning: --eta " << format_double(*o.eta)
        << " ignored, sd-fixed uses 1/gamma = " << format_double(1.0 / spec.gamma)
        << '\n';
  }
  validate(cfg);
  return cfg;
}

GrassmannPoint initial_point(const Options& o, const SpectralData& spec,
                             std::uint64_t seed) {
  std::mt19937_64 rng = stream_rng(seed, 1);
  if (o.init_angle) {
    const double a = *o.init_angle;
    if (!(a >= 0.0)) throw UsageError("--init-angle must be non-negative");
    if (!(a < kHalfPi)) {
      throw Error(ErrorCode::HypothesisViolated,
                  "initialization outside pi/2: --init-angle " + format_double(a));
    }
    return point_at_distance(rng, spec.leading_block, a);
  }
  return random_point(rng, spec.n(), spec.k());
}

struct RunOutcome {
  ConvergenceTrace trace;
  ContractionReport report;
  std::vector<std::string> files;
};

ordered_json check_summary(const ContractionReport& r) {
  ordered_json j;
  const std::pair<const char*, Check StepChecks::*> checks[] = {
      {"contraction", &StepChecks::contraction},
      {"distance_cap", &StepChecks::distance_cap},
      {"lyapunov", &StepChecks::lyapunov},
      {"global_bound", &StepChecks::global_bound}};
  for (const auto& [name, member] : checks) {
    const int pass = r.count(member, Check::Pass);
    const int fail = r.count(member, Check::Fail);
    j[name] = {{"checked", pass + fail}, {"failed", fail}};
  }
  j["passed"] = r.passed();
  return j;
}

ordered_json finite_or_null(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

TraceMeta run_meta(const Options& o, const Problem& p) {
  TraceMeta meta;
  meta["spectrum"] = p.spectrum;
  meta["rotate"] = o.rotate;
  if (!o.matrix.empty()) meta["matrix"] = o.matrix;
  if (o.matrix.empty() && o.spectrum.empty()) meta["spectrum_gen"] = o.spectrum_gen;
  if (o.init_angle) meta["init_angle"] = *o.init_angle;
  return meta;
}

std::vector<std::string> emit_trace(const ConvergenceTrace& trace,
                                    const TraceMeta& meta, const Options& o,
                                    const std::string& stem) {
  std::vector<std::string> files;
  if (o.out.empty()) return files;
  const fs::path dir(o.out);
  if (o.format == "json" || o.format == "both") {
    const fs::path path = dir / (stem + ".json");
    write_text_file(path, trace_to_json(trace, meta));
    files.push_back(path.string());
  }
  if (o.format == "csv" || o.format == "both") {
    const fs::path path = dir / (stem + ".csv");
    write_text_file(path, trace_to_csv(trace));
    files.push_back(path.string());
  }
  return files;
}

ordered_json outcome_json(const RunOutcome& r) {
  const TraceRow& last = r.trace.rows.back();
  ordered_json j;
  j["method"] = r.trace.method;
  if (r.trace.method == "rsd") j["rule"] = std::string(to_string(r.trace.config.step_rule));
  j["status"] = std::string(to_string(r.trace.status));
  j["iterations"] = r.trace.iterations();
  j["d0"] = finite_or_null(r.trace.d0);
  j["final_dist"] = finite_or_null(last.dist);
  j["final_gap"] = finite_or_null(last.gap);
  j["final_f"] = finite_or_null(last.f);
  j["checks"] = check_summary(r.report);
  j["files"] = r.files;
  return j;
}

void print_outcome(std::ostream& out, const RunOutcome& r) {
  const TraceRow& last = r.trace.rows.back();
  out << r.trace.method;
  if (r.trace.method == "rsd") out << " (" << to_string(r.trace.config.step_rule) << ")";
  out << ": status=" << to_string(r.trace.status)
      << " iterations=" << r.trace.iterations()
      << " dist=" << format_double(last.dist)
      << " gap=" << format_double(last.gap)
      << " bounds=" << (r.report.passed() ? "pass" : "FAIL") << " ("
      << r.report.checked - r.report.failures << "/" << r.report.checked
      << " checks)\n";
  for (const std::string& f : r.files) out << "  wrote " << f << '\n';
}

void ensure_out_dir(const Options& o) {
  if (o.out.empty()) return;
  std::error_code ec;
  fs::create_directories(o.out, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + o.out + ": " + ec.message());
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const Problem p = build_problem(o);
  const SolverConfig cfg = solver_config(o, err, p.spec);
  const GrassmannPoint x0 = initial_point(o, p.spec, o.seed);
  ensure_out_dir(o);
  const TraceMeta meta = run_meta(o, p);

  std::vector<RunOutcome> runs;
  {
    RunOutcome r;
    r.trace = solve_rsd(p.a, p.spec, x0, cfg);
    r.report = verify_contraction(r.trace, p.spec);
    r.files = emit_trace(r.trace, meta, o, "rsd");
    runs.push_back(std::move(r));
  }
  if (o.baseline) {
    RunOutcome r;
    r.trace = subspace_iteration(p.a, p.spec, x0, cfg);
    r.report = verify_contraction(r.trace, p.spec);
    r.files = emit_trace(r.trace, meta, o, "subspace_iteration");
    runs.push_back(std::move(r));
  }

  out << "problem: n=" << p.spec.n() << " k=" << p.spec.k()
      << " delta=" << format_double(p.spec.delta)
      << " gamma=" << format_double(p.spec.gamma) << '\n';
  bool ok = true;
  for (const RunOutcome& r : runs) {
    print_outcome(out, r);
    ok = ok && r.report.passed();
  }

  if (!o.out.empty()) {
    ordered_json report;
    report["command"] = "solve";
    report["n"] = p.spec.n();
    report["k"] = p.spec.k();
    report["seed"] = o.seed;
    report["delta"] = p.spec.delta;
    report["gamma"] = p.spec.gamma;
    report["f_star"] = p.spec.f_star;
    report["bounds_passed"] = ok;
    report["runs"] = ordered_json::array();
    for (const RunOutcome& r : runs) report["runs"].push_back(outcome_json(r));
    const fs::path path = fs::path(o.out) / "report.json";
    write_text_file(path, report.dump(1) + "\n");
    out << "report: " << path.string() << '\n';
  }
  if (!ok && o.enforce_bounds) {
    err << "error: bound violation in solver trace\n";
    return kExitViolation;
  }
  return kExitOk;
}

struct Tally {
  std::string name;
  int checked = 0;
  int passed = 0;
  double worst = std::numeric_limits<double>::infinity();

  void add(bool ok, double rel_residual) {
    ++checked;
    if (ok) ++passed;
    worst = std::min(worst, rel_residual);
  }
  void add(const CertificateResult& c) { add(c.holds, c.relative_residual()); }
};

std::vector<double> random_spectrum(std::mt19937_64& rng, Eigen::Index n,
                                    Eigen::Index k, bool tie) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> lambda(static_cast<std::size_t>(n));
  for (double& v : lambda) v = 10.0 * unit(rng);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  if (tie) lambda[static_cast<std::size_t>(k)] = lambda[static_cast<std::size_t>(k - 1)];
  return lambda;
}

Problem random_problem(std::mt19937_64& rng, Eigen::Index n, Eigen::Index k,
                       bool tie) {
  ProblemSpec ps;
  ps.n = n;
  ps.k = k;
  ps.spectrum = random_spectrum(rng, n, k, tie);
  ps.rotate = true;
  ps.seed = rng();
  return generate_problem(ps);
}

/// Point whose principal angles with V_alpha are uniform draws in
/// [0, max_angle].
GrassmannPoint point_within(std::mt19937_64& rng, const SpectralData& spec,
                            double max_angle) {
  std::uniform_real_distribution<double> angle(0.0, max_angle);
  const Eigen::Index m = std::min(spec.k(), spec.n() - spec.k());
  Vector angles = Vector::Zero(spec.k());
  for (Eigen::Index j = 0; j < m; ++j) angles(j) = angle(rng);
  std::sort(angles.data(), angles.data() + angles.size(), std::greater<>());
  return point_at_angles(rng, spec.leading_block, spec.trailing_block, angles);
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream&) {
  const bool selective = o.region || o.counterexample;
  const bool sweep = !selective;
  const bool region = sweep || o.region;
  const bool counter = sweep || o.counterexample;
  const int max_n = o.n >= 3 ? o.n : 12;
  ensure_out_dir(o);

  std::vector<Tally> tallies;
  bool ok = true;

  if (sweep) {
    Tally wqc{"weak_quasi_convexity"}, qg{"quadratic_growth"},
        qg_sine{"quadratic_growth_sine"}, wsc{"weak_strong_convexity"},
        pl{"gradient_dominance"}, smooth{"smoothness_descent"};
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < o.instances; ++i) {
      std::mt19937_64 rng = stream_rng(o.seed, 1000 + static_cast<std::uint64_t>(i));
      const Eigen::Index n =
          std::uniform_int_distribution<Eigen::Index>(3, max_n)(rng);
      const Eigen::Index k = std::uniform_int_distribution<Eigen::Index>(1, n - 1)(rng);
      const Problem p = random_problem(rng, n, k, unit(rng) < 0.2);
      const GrassmannPoint x = point_within(rng, p.spec, kHalfPi - 0.05);
      wqc.add(check_weak_quasi_convexity(p.a, p.spec, x));
      const QuadraticGrowthCertificate g = check_quadratic_growth(p.a, p.spec, x);
      qg.add(g.growth);
      qg_sine.add(g.sine_bound);
      wsc.add(check_weak_strong_convexity(p.a, p.spec, x));
      pl.add(check_gradient_dominance(p.a, p.spec, x));
      const GrassmannPoint y =
          point_at_distance(rng, x, (kHalfPi - 0.05) * unit(rng));
      smooth.add(check_smoothness_descent(p.a, p.spec, x, y));
    }
    for (Tally* t : {&wqc, &qg, &qg_sine, &wsc, &pl, &smooth}) tallies.push_back(*t);
  }

  if (region) {
    Tally general{"convexity_region"}, sphere{"convexity_region_k1"};
    for (int i = 0; i < o.samples; ++i) {
      std::mt19937_64 rng = stream_rng(o.seed, 500000 + static_cast<std::uint64_t>(i));
      const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(
          std::min(4, max_n), max_n)(rng);
      const Eigen::Index k =
          std::uniform_int_distribution<Eigen::Index>(1, n / 2)(rng);
      {
        const Problem p = random_problem(rng, n, k, false);
        const GrassmannPoint x =
            point_within(rng, p.spec, convexity_radius(p.spec).max_angle());
        const double min_eig = symmetric_eigenvalues(hessian_matrix(p.a, x).h).minCoeff();
        general.add(min_eig >= -1e-8, min_eig);
      }
      {
        const Problem p = random_problem(rng, n, 1, false);
        const GrassmannPoint x =
            point_within(rng, p.spec, sphere_convexity_radius(p.spec).max_angle());
        const double min_eig = symmetric_eigenvalues(hessian_matrix(p.a, x).h).minCoeff();
        sphere.add(min_eig >= -1e-8, min_eig);
      }
    }
    tallies.push_back(general);
    tallies.push_back(sphere);
  }

  if (!tallies.empty()) {
    out << std::left << std::setw(26) << "certificate" << std::right
        << std::setw(9) << "checked" << std::setw(9) << "passed"
        << "  worst_residual\n";
  }
  ordered_json report;
  report["command"] = "certify";
  report["seed"] = o.seed;
  report["certificates"] = ordered_json::array();
  for (const Tally& t : tallies) {
    out << std::left << std::setw(26) << t.name << std::right << std::setw(9)
        << t.checked << std::setw(9) << t.passed << "  "
        << (t.checked > 0 ? format_double(t.worst) : "-") << '\n';
    ok = ok && t.passed == t.checked;
    report["certificates"].push_back(
        {{"name", t.name},
         {"checked", t.checked},
         {"passed", t.passed},
         {"worst_residual", t.checked > 0 ? finite_or_null(t.worst) : nullptr}});
  }

  if (counter) {
    report["counterexample"] = ordered_json::array();
    for (double eps : o.eps) {
      const double value = counterexample_hessian(eps);
      out << "counterexample_hessian(" << format_double(eps)
          << ") = " << std::setprecision(12) << value << std::setprecision(6)
          << '\n';
      report["counterexample"].push_back({{"eps", eps}, {"value", value}});
    }
  }
  report["passed"] = ok;
  if (!o.out.empty()) {
    const fs::path path = fs::path(o.out) / "certify.json";
    write_text_file(path, report.dump(1) + "\n");
    out << "report: " << path.string() << '\n';
  }
  if (!ok) return kExitViolation;
  return kExitOk;
}

struct SweepJob {
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::optional<RunOutcome> rsd;
  std::optional<RunOutcome> baseline;
  std::string skipped;
};

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const std::vector<double> deltas = parse_list(o.deltas, "--deltas");
  if (o.instances < 1) throw UsageError("--instances must be >= 1");
  if (o.n < 2 && o.spectrum.empty() && o.matrix.empty()) {
    throw UsageError("--n (>= 2) is required");
  }
  ensure_out_dir(o);

  std::vector<SweepJob> jobs;
  for (double d : deltas) {
    for (int i = 0; i < o.instances; ++i) {
      jobs.push_back({d, o.seed + static_cast<std::uint64_t>(i), {}, {}, {}});
    }
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(jobs.size());
  auto worker = [&]() {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      SweepJob& job = jobs[j];
      Options local = o;
      local.delta = job.delta;
      local.seed = job.seed;
      if (local.spectrum.empty() && local.matrix.empty()) local.spectrum_gen = "clustered";
      try {
        const Problem p = build_problem(local);
        std::ostringstream sink;
        const SolverConfig cfg = solver_config(local, sink, p.spec);
        const GrassmannPoint x0 = initial_point(local, p.spec, local.seed);
        const TraceMeta meta = run_meta(local, p);
        char stem[64];
        std::snprintf(stem, sizeof stem, "run_%04zu", j);
        RunOutcome r;
        r.trace = solve_rsd(p.a, p.spec, x0, cfg);
        r.report = verify_contraction(r.trace, p.spec);
        r.files = emit_trace(r.trace, meta, local, std::string(stem) + "_rsd");
        job.rsd = std::move(r);
        if (o.baseline) {
          RunOutcome b;
          b.trace = subspace_iteration(p.a, p.spec, x0, cfg);
          b.report = verify_contraction(b.trace, p.spec);
          b.files = emit_trace(b.trace, meta, local,
                               std::string(stem) + "_subspace_iteration");
          job.baseline = std::move(b);
        }
      } catch (const Error& e) {
        if (e.code() == ErrorCode::HypothesisViolated) {
          job.skipped = e.what();
        } else {
          errors[j] = e.what();
        }
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(
      jobs.size(), o.jobs > 0 ? static_cast<std::size_t>(o.jobs) : hw);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!errors[j].empty()) {
      err << "error: run " << j << ": " << errors[j] << '\n';
      return kExitUsage;
    }
  }

  bool ok = true;
  ordered_json report;
  report["command"] = "sweep";
  report["runs"] = ordered_json::array();
  out << std::setw(5) << "run" << std::setw(8) << "delta" << std::setw(8)
      << "seed" << "  method              status              iters  final_dist  bounds\n";
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const SweepJob& job = jobs[j];
    ordered_json entry;
    entry["run"] = j;
    entry["delta"] = job.delta;
    entry["seed"] = job.seed;
    if (!job.skipped.empty()) {
      entry["skipped"] = job.skipped;
      out << std::setw(5) << j << std::setw(8) << format_double(job.delta)
          << std::setw(8) << job.seed << "  skipped: " << job.skipped << '\n';
      report["runs"].push_back(std::move(entry));
      continue;
    }
    entry["results"] = ordered_json::array();
    for (const std::optional<RunOutcome>* r : {&job.rsd, &job.baseline}) {
      if (!r->has_value()) continue;
      const RunOutcome& run = **r;
      ok = ok && run.report.passed();
      entry["results"].push_back(outcome_json(run));
      out << std::setw(5) << j << std::setw(8) << format_double(job.delta)
          << std::setw(8) << job.seed << "  " << std::left << std::setw(20)
          << run.trace.method << std::setw(20) << to_string(run.trace.status)
          << std::right << std::setw(5) << run.trace.iterations() << "  "
          << std::setw(10) << std::setprecision(3) << std::scientific
          << run.trace.rows.back().dist << std::defaultfloat
          << std::setprecision(6) << "  " << (run.report.passed() ? "pass" : "FAIL")
          << '\n';
    }
    report["runs"].push_back(std::move(entry));
  }
  report["bounds_passed"] = ok;
  if (!o.out.empty()) {
    const fs::path path = fs::path(o.out) / "sweep.json";
    write_text_file(path, report.dump(1) + "\n");
    out << "report: " << path.string() << '\n';
  }
  if (!ok && o.enforce_bounds) {
    err << "error: bound violation in sweep\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_counterexample(const Options& o, std::ostream& out) {
  for (double eps : o.eps) {
    out << std::setprecision(12) << counterexample_hessian(eps) << '\n';
  }
  return kExitOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const Problem p = build_problem(o);
  if (o.out.empty()) {
    write_matrix(out, p.a.entries());
    return kExitOk;
  }
  ensure_out_dir(o);
  const fs::path path = fs::path(o.out) / "matrix.txt";
  write_matrix(path, p.a.entries());
  out << "wrote " << path.string() << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Options o;
  CLI::App app{"Riemannian steepest descent for the block Rayleigh quotient"};
  app.name("grq");
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Run steepest descent and write traces");
  add_problem_flags(solve, o);
  add_solver_flags(solve, o);

  auto* certify = app.add_subcommand("certify", "Randomized certificate sweep");
  add_problem_flags(certify, o);
  certify->add_option("--instances", o.instances, "Random instances per certificate");
  certify->add_flag("--region", o.region, "Sample the geodesic convexity region");
  certify->add_option("--samples", o.samples, "Samples for --region");
  certify->add_flag("--counterexample", o.counterexample,
                    "Evaluate the counterexample Hessian");
  certify->add_option("--eps", o.eps, "Counterexample parameter(s)")->delimiter(',');
  certify->add_option("--out", o.out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Parallel solver sweep over eigengaps");
  add_problem_flags(sweep, o);
  add_solver_flags(sweep, o);
  sweep->add_option("--deltas", o.deltas, "Comma separated eigengaps");
  sweep->add_option("--instances", o.instances, "Seeds per eigengap");
  sweep->add_option("--jobs", o.jobs, "Worker threads (0 = hardware)");

  auto* counter = app.add_subcommand("counterexample", "Print counterexample_hessian(eps)");
  counter->add_option("--eps", o.eps, "Parameter(s) in [0, 1]")->delimiter(',');

  auto* gen = app.add_subcommand("gen", "Write a generated matrix");
  add_problem_flags(gen, o);
  gen->add_option("--out", o.out, "Output directory (stdout when omitted)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (certify->parsed() && o.instances < 0) {
    err << "error: --instances must be >= 0\n";
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(o, out, err);
    if (certify->parsed()) return cmd_certify(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
    if (counter->parsed()) return cmd_counterexample(o, out);
    if (gen->parsed()) return cmd_gen(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace grq::cli
