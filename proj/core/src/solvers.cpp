#include "grq/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "grq/certificates.hpp"
#include "grq/error.hpp"

namespace grq {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kZeroGradient = 1e-13;
// The 1/gamma gap bounds assume dist(X_0, V_alpha) <= pi/4.
constexpr double kOneOverGammaInitRadius = std::numbers::pi / 4.0;
// a(X) >= cos(sqrt(2) pi/4) >= 0.4 along 1/gamma runs from that radius.
constexpr double kOneOverGammaWqcFloor = 0.4;

double step_tolerance(double x) { return x * (1.0 + 1e-12); }

struct BoundPlan {
  double eta = kNaN;            // constant step for linear/sublinear formulas
  bool linear = false;          // dist^2 linear rate
  bool sublinear_fixed = false; // (2 gamma + 1/eta) / (cos(d0) t + 1) d0^2
  bool one_over_gamma = false;  // 1/gamma gap bounds
};

BoundPlan plan_bounds(const SolverConfig& cfg, const SpectralData& spec,
                      double d0) {
  BoundPlan plan;
  if (!cfg.record_bounds || spec.gamma <= 0.0 || d0 >= kHalfPi) return plan;
  const double cos_limit = std::cos(d0) / spec.gamma;
  switch (cfg.step_rule) {
    case StepRule::AdaptiveAxOverGamma:
      plan.eta = cos_limit;
      plan.linear = spec.delta > 0.0;
      break;
    case StepRule::CosD0OverGamma:
      plan.eta = cos_limit;
      plan.linear = spec.delta > 0.0;
      plan.sublinear_fixed = true;
      break;
    case StepRule::FixedEta:
      if (cfg.eta <= step_tolerance(cos_limit)) {
        plan.eta = cfg.eta;
        plan.linear = spec.delta > 0.0;
        plan.sublinear_fixed = true;
      }
      break;
    case StepRule::FixedOneOverGamma:
      plan.one_over_gamma = d0 <= kOneOverGammaInitRadius + 1e-12;
      break;
  }
  return plan;
}

void fill_bounds(TraceRow& row, const BoundPlan& plan, const SpectralData& spec,
                 double d0, double gap0, bool record) {
  row.linear_bound = kNaN;
  row.sublinear_bound = kNaN;
  row.gap_linear_bound = kNaN;
  row.lyapunov = kNaN;
  if (!record) return;
  const double t = row.t;
  const double d0_sq = d0 * d0;
  if (plan.linear) {
    const double rate = 1.0 - kQuadraticGrowthConstant * std::cos(d0) *
                                  spec.delta * plan.eta;
    row.linear_bound = std::pow(rate, t) * d0_sq;
  }
  if (plan.sublinear_fixed) {
    row.sublinear_bound = (2.0 * spec.gamma + 1.0 / plan.eta) /
                          (std::cos(d0) * t + 1.0) * d0_sq;
  }
  if (plan.one_over_gamma) {
    row.sublinear_bound = (gap0 + 0.5 * spec.gamma * d0_sq) /
                          (kOneOverGammaWqcFloor * t + 1.0);
    if (spec.delta > 0.0) {
      const double rate = 1.0 - 0.32 * kQuadraticGrowthConstant * spec.delta /
                                    spec.gamma;
      row.gap_linear_bound = std::pow(rate, t) * gap0;
    }
  }
  if (spec.gamma > 0.0) {
    row.lyapunov = row.gap / spec.gamma + 0.5 * row.dist * row.dist;
  }
}

// Geometric part of a trace row (everything except eta and the bounds).
TraceRow measure(const SymmetricPSDMatrix& a, const SpectralData& spec,
                 const GrassmannPoint& x, int t, const TangentVector& grad) {
  TraceRow row;
  row.t = t;
  row.f = f_value(a, x);
  row.gap = std::max(0.0, row.f - spec.f_star);
  const Vector angles = principal_angle_values(x, spec.leading_block);
  row.dist = angles.norm();
  row.theta_max = angles(angles.size() - 1);
  row.grad_norm_f = grad.norm();
  row.grad_norm_2 = grad.spectral_norm();
  row.a = row.theta_max < kHalfPi - 1e-9 ? wqc_constant_from_angle(row.theta_max)
                                         : kNaN;
  return row;
}

std::optional<SolverStatus> stop_reason(const TraceRow& row,
                                        const SpectralData& spec,
                                        const SolverConfig& cfg) {
  if (spec.delta > 0.0 && row.dist <= cfg.dist_tol) {
    return SolverStatus::ConvergedDistance;
  }
  if (row.gap <= cfg.fval_tol) return SolverStatus::ConvergedValue;
  if (row.grad_norm_f < kZeroGradient * spec.gamma) {
    return SolverStatus::ZeroGradient;
  }
  return std::nullopt;
}

void require_compatible(const SymmetricPSDMatrix& a, const SpectralData& spec,
                        const GrassmannPoint& x0) {
  if (a.n() != x0.n() || spec.n() != x0.n() || spec.k() != x0.k()) {
    throw Error(ErrorCode::ShapeMismatch,
                "initial point does not match the problem dimensions");
  }
}

}  // namespace

std::string_view to_string(StepRule rule) noexcept {
  switch (rule) {
    case StepRule::AdaptiveAxOverGamma: return "adaptive";
    case StepRule::CosD0OverGamma: return "cos";
    case StepRule::FixedOneOverGamma: return "sd-fixed";
    case StepRule::FixedEta: return "eta";
  }
  return "unknown";
}

std::string_view to_string(SolverStatus status) noexcept {
  switch (status) {
    case SolverStatus::ConvergedDistance: return "converged_distance";
    case SolverStatus::ConvergedValue: return "converged_value";
    case SolverStatus::ZeroGradient: return "zero_gradient";
    case SolverStatus::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

void validate(const SolverConfig& cfg) {
  if (cfg.max_iters < 0) {
    throw Error(ErrorCode::PreconditionViolated, "max_iters must be >= 0");
  }
  if (!(cfg.dist_tol > 0.0) || !(cfg.fval_tol > 0.0)) {
    throw Error(ErrorCode::PreconditionViolated, "tolerances must be positive");
  }
  if (!(cfg.noise_sigma >= 0.0)) {
    throw Error(ErrorCode::PreconditionViolated, "noise_sigma must be >= 0");
  }
  if (cfg.step_rule == StepRule::FixedEta && !(cfg.eta > 0.0)) {
    throw Error(ErrorCode::PreconditionViolated, "fixed step must be positive");
  }
}

const std::vector<std::string>& ConvergenceTrace::column_names() {
  static const std::vector<std::string> names = {
      "t",           "f",           "gap",          "dist",
      "theta_max",   "grad_norm_f", "grad_norm_2",  "eta",
      "a",           "linear_bound", "sublinear_bound", "gap_linear_bound",
      "lyapunov"};
  return names;
}

std::vector<double> ConvergenceTrace::row_values(std::size_t i) const {
  const TraceRow& r = rows.at(i);
  return {static_cast<double>(r.t), r.f, r.gap, r.dist, r.theta_max,
          r.grad_norm_f, r.grad_norm_2, r.eta, r.a, r.linear_bound,
          r.sublinear_bound, r.gap_linear_bound, r.lyapunov};
}

GrassmannPoint rsd_step(const SymmetricPSDMatrix& a, const GrassmannPoint& x,
                        double eta) {
  if (eta == 0.0) return x;
  const TangentVector grad = riemannian_gradient(a, x);
  if (grad.norm() < 1e-14 * (1.0 + a.entries().norm())) return x;
  return exp_map(grad.scaled(-eta));
}

double compute_step(const SpectralData& spec, StepRule rule,
                    const GrassmannPoint& x, double d0, double fixed_eta) {
  switch (rule) {
    case StepRule::AdaptiveAxOverGamma: {
      const double gamma = nondegenerate_gamma(spec);
      return wqc_constant(x, spec.leading_block) / gamma;
    }
    case StepRule::CosD0OverGamma: {
      const double gamma = nondegenerate_gamma(spec);
      if (!(d0 < kHalfPi)) {
        throw Error(ErrorCode::AngleAtBoundary,
                    "cos rule needs dist(X_0, V_alpha) < pi/2");
      }
      return std::cos(d0) / gamma;
    }
    case StepRule::FixedOneOverGamma:
      return 1.0 / nondegenerate_gamma(spec);
    case StepRule::FixedEta:
      return fixed_eta;
  }
  return 0.0;
}

ConvergenceTrace solve_rsd(const SymmetricPSDMatrix& a, Eigen::Index k,
                           const GrassmannPoint& x0, const SolverConfig& cfg) {
  return solve_rsd(a, spectral_data(a, k), x0, cfg);
}

ConvergenceTrace solve_rsd(const SymmetricPSDMatrix& a, const SpectralData& spec,
                           const GrassmannPoint& x0, const SolverConfig& cfg) {
  validate(cfg);
  require_compatible(a, spec, x0);

  ConvergenceTrace trace;
  trace.method = "rsd";
  trace.config = cfg;
  trace.n = x0.n();
  trace.k = x0.k();
  trace.f_star = spec.f_star;
  trace.delta = spec.delta;
  trace.gamma = spec.gamma;

  const Vector angles0 = principal_angle_values(x0, spec.leading_block);
  const double d0 = angles0.norm();
  const double theta0 = angles0(angles0.size() - 1);
  trace.d0 = d0;

  switch (cfg.step_rule) {
    case StepRule::AdaptiveAxOverGamma:
    case StepRule::CosD0OverGamma:
      nondegenerate_gamma(spec);
      if (!(d0 < kHalfPi)) {
        throw Error(ErrorCode::HypothesisViolated,
                    "initialization outside pi/2: dist(X_0, V_alpha) = " +
                        std::to_string(d0));
      }
      break;
    case StepRule::FixedOneOverGamma:
      nondegenerate_gamma(spec);
      if (!(theta0 < kHalfPi - 1e-9)) {
        throw Error(ErrorCode::HypothesisViolated,
                    "initialization outside pi/2: theta_k(X_0, V_alpha) = " +
                        std::to_string(theta0));
      }
      break;
    case StepRule::FixedEta:
      break;
  }

  const BoundPlan plan = plan_bounds(cfg, spec, d0);
  trace.bound_eta = plan.eta;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, cfg.noise_sigma);

  GrassmannPoint x = x0;
  double gap0 = 0.0;
  for (int t = 0;; ++t) {
    const Matrix ax = a.entries() * x.representative();
    const TangentVector grad = gradient_from_product(x, ax);
    TraceRow row = measure(a, spec, x, t, grad);
    if (t == 0) gap0 = row.gap;
    row.eta = compute_step(spec, cfg.step_rule, x, d0, cfg.eta);
    fill_bounds(row, plan, spec, d0, gap0, cfg.record_bounds);
    trace.rows.push_back(row);
    if (cfg.store_iterates) trace.iterates.push_back(x.representative());

    if (auto reason = stop_reason(row, spec, cfg)) {
      trace.status = *reason;
      break;
    }
    if (t >= cfg.max_iters) {
      trace.status = SolverStatus::MaxIterations;
      break;
    }

    if (cfg.noise_sigma > 0.0) {
      Matrix noisy = ax;
      for (Eigen::Index j = 0; j < noisy.cols(); ++j) {
        for (Eigen::Index i = 0; i < noisy.rows(); ++i) noisy(i, j) += normal(rng);
      }
      x = exp_map(gradient_from_product(x, noisy).scaled(-row.eta));
    } else {
      x = exp_map(grad.scaled(-row.eta));
    }
  }
  return trace;
}

ConvergenceTrace subspace_iteration(const SymmetricPSDMatrix& a, Eigen::Index k,
                                    const GrassmannPoint& x0,
                                    const SolverConfig& cfg) {
  return subspace_iteration(a, spectral_data(a, k), x0, cfg);
}

ConvergenceTrace subspace_iteration(const SymmetricPSDMatrix& a,
                                    const SpectralData& spec,
                                    const GrassmannPoint& x0,
                                    const SolverConfig& cfg) {
  validate(cfg);
  require_compatible(a, spec, x0);

  ConvergenceTrace trace;
  trace.method = "subspace_iteration";
  trace.config = cfg;
  trace.n = x0.n();
  trace.k = x0.k();
  trace.f_star = spec.f_star;
  trace.delta = spec.delta;
  trace.gamma = spec.gamma;
  trace.d0 = distance(x0, spec.leading_block);
  trace.bound_eta = kNaN;

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, cfg.noise_sigma);
  const BoundPlan no_bounds;

  GrassmannPoint x = x0;
  double gap0 = 0.0;
  for (int t = 0;; ++t) {
    Matrix ax = a.entries() * x.representative();
    TraceRow row = measure(a, spec, x, t, gradient_from_product(x, ax));
    if (t == 0) gap0 = row.gap;
    row.eta = kNaN;
    fill_bounds(row, no_bounds, spec, trace.d0, gap0, cfg.record_bounds);
    trace.rows.push_back(row);
    if (cfg.store_iterates) trace.iterates.push_back(x.representative());

    if (auto reason = stop_reason(row, spec, cfg)) {
      trace.status = *reason;
      break;
    }
    if (t >= cfg.max_iters) {
      trace.status = SolverStatus::MaxIterations;
      break;
    }

    if (cfg.noise_sigma > 0.0) {
      for (Eigen::Index j = 0; j < ax.cols(); ++j) {
        for (Eigen::Index i = 0; i < ax.rows(); ++i) ax(i, j) += normal(rng);
      }
    }
    const Vector sv = singular_values(ax);
    if (!(sv(0) > 0.0) || sv(sv.size() - 1) < 1e-14 * sv(0)) {
      throw Error(ErrorCode::RankCollapse,
                  "A X_t lost rank at iteration " + std::to_string(t));
    }
    x = GrassmannPoint::from_orthonormal(thin_q(ax));
  }
  return trace;
}

int ContractionReport::count(Check StepChecks::*which, Check state) const {
  return static_cast<int>(std::count_if(
      steps.begin(), steps.end(),
      [&](const StepChecks& s) { return s.*which == state; }));
}

ContractionReport verify_contraction(const ConvergenceTrace& trace,
                                     const SpectralData& spec) {
  if (!trace.config.record_bounds) {
    throw Error(ErrorCode::MissingBounds,
                "trace was recorded without bound columns");
  }
  ContractionReport report;
  const auto& rows = trace.rows;
  report.steps.resize(rows.size());
  const double gamma = spec.gamma;
  const double d0_sq = trace.d0 * trace.d0;
  const bool is_rsd = trace.method == "rsd";
  bool all_within_one_over_gamma = is_rsd && gamma > 0.0;

  auto record = [&](Check& slot, bool ok) {
    slot = ok ? Check::Pass : Check::Fail;
    ++report.checked;
    if (!ok) ++report.failures;
  };

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TraceRow& row = rows[i];
    StepChecks& checks = report.steps[i];
    const double dist_sq = row.dist * row.dist;

    // (i) one-step contraction, valid whenever eta_t <= a(X_t) / gamma.
    if (is_rsd && i + 1 < rows.size() && std::isfinite(row.a) && gamma > 0.0 &&
        row.eta <= step_tolerance(row.a / gamma)) {
      const double factor =
          1.0 - 2.0 * kQuadraticGrowthConstant * spec.delta * row.a * row.eta;
      const double next_sq = rows[i + 1].dist * rows[i + 1].dist;
      record(checks.contraction, next_sq <= factor * dist_sq + kBoundSlack);
    }

    // (ii) factor-2 distance cap and (iii) Lyapunov monotonicity, valid for
    // steps eta <= 1/gamma from theta_k < pi/2.
    if (all_within_one_over_gamma && i > 0 &&
        !(rows[i - 1].eta <= step_tolerance(1.0 / gamma))) {
      all_within_one_over_gamma = false;
    }
    if (all_within_one_over_gamma && std::isfinite(rows.front().a)) {
      record(checks.distance_cap, dist_sq <= 2.0 * d0_sq + kBoundSlack);
      if (i + 1 < rows.size() && row.eta <= step_tolerance(1.0 / gamma)) {
        record(checks.lyapunov,
               rows[i + 1].lyapunov <= row.lyapunov + kBoundSlack);
      }
    }

    // (iv) recorded global bounds.
    bool any = false;
    bool ok = true;
    if (std::isfinite(row.linear_bound)) {
      any = true;
      ok = ok && dist_sq <= row.linear_bound + kBoundSlack;
    }
    if (std::isfinite(row.sublinear_bound)) {
      any = true;
      ok = ok && row.gap <= row.sublinear_bound +
                                kBoundSlack * std::max(1.0, row.sublinear_bound);
    }
    if (std::isfinite(row.gap_linear_bound)) {
      any = true;
      ok = ok && row.gap <= row.gap_linear_bound +
                                kBoundSlack * std::max(1.0, row.gap_linear_bound);
    }
    if (any) record(checks.global_bound, ok);
  }
  return report;
}

double angle_monotonicity_probe(const SymmetricPSDMatrix& a,
                                const SpectralData& spec,
                                const GrassmannPoint& x,
                                std::span<const double> eta_grid) {
  if (eta_grid.empty()) {
    throw Error(ErrorCode::EmptyGrid, "step-size grid is empty");
  }
  for (std::size_t i = 0; i < eta_grid.size(); ++i) {
    if (!(eta_grid[i] >= 0.0) || (i > 0 && eta_grid[i] < eta_grid[i - 1])) {
      throw Error(ErrorCode::PreconditionViolated,
                  "step-size grid must be non-negative and ascending");
    }
  }
  const Vector before = principal_angle_values(x, spec.leading_block);
  double best = 0.0;
  for (double eta : eta_grid) {
    const Vector after =
        principal_angle_values(rsd_step(a, x, eta), spec.leading_block);
    if (((after - before).array() <= 1e-12).all()) best = eta;
  }
  return best;
}

double angle_monotonicity_probe(const SymmetricPSDMatrix& a, Eigen::Index k,
                                const GrassmannPoint& x,
                                std::span<const double> eta_grid) {
  return angle_monotonicity_probe(a, spectral_data(a, k), x, eta_grid);
}

double predicted_iterations(double d0, double eps, double delta, double eta) {
  if (d0 <= eps) return 0.0;
  const double rate = 1.0 - 0.4 * std::cos(d0) * delta * eta;
  if (!(rate > 0.0 && rate < 1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return 2.0 * std::log(d0 / eps) / std::abs(std::log(rate)) + 1.0;
}

}  // namespace grq
