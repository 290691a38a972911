#pragma once

// Riemannian steepest descent on Gr(n,k) for the block Rayleigh quotient,
// the subspace-iteration baseline, and monitors that replay the
// convergence bounds against a recorded trace.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grq/rayleigh.hpp"

namespace grq {

enum class StepRule {
  AdaptiveAxOverGamma,  // eta_t = a(X_t) / gamma
  CosD0OverGamma,       // eta = cos(dist(X_0, V_alpha)) / gamma, fixed per run
  FixedOneOverGamma,    // eta = 1 / gamma
  FixedEta,             // eta = SolverConfig::eta
};

std::string_view to_string(StepRule rule) noexcept;

struct SolverConfig {
  StepRule step_rule = StepRule::CosD0OverGamma;
  double eta = 0.0;  // only read by StepRule::FixedEta
  int max_iters = 10000;
  double dist_tol = 1e-10;
  double fval_tol = 1e-14;
  std::uint64_t seed = 0;
  double noise_sigma = 0.0;
  bool record_bounds = true;
  bool store_iterates = false;
};

/// Throws PreconditionViolated for non-positive tolerances, negative
/// iteration counts or noise, or a non-positive fixed step.
void validate(const SolverConfig& cfg);

enum class SolverStatus {
  ConvergedDistance,
  ConvergedValue,
  ZeroGradient,
  MaxIterations,
};

std::string_view to_string(SolverStatus status) noexcept;

/// One row per iterate X_t. Bound columns are NaN where the corresponding
/// result does not apply to the run.
struct TraceRow {
  int t = 0;
  double f = 0.0;
  double gap = 0.0;        // f_t - f*, clamped at 0
  double dist = 0.0;       // dist(X_t, V_alpha)
  double theta_max = 0.0;  // largest principal angle to V_alpha
  double grad_norm_f = 0.0;
  double grad_norm_2 = 0.0;
  double eta = 0.0;        // step taken from X_t (NaN for subspace iteration)
  double a = 0.0;          // a(X_t), NaN when theta_max >= pi/2
  double linear_bound = 0.0;      // (1 - c_Q cos(d0) delta eta)^t d0^2
  double sublinear_bound = 0.0;   // O(1/t) bound on gap_t
  double gap_linear_bound = 0.0;  // (1 - 0.32 c_Q delta/gamma)^t gap_0
  double lyapunov = 0.0;          // gap_t / gamma + dist_t^2 / 2
};

struct ConvergenceTrace {
  std::string method;  // "rsd" or "subspace_iteration"
  SolverConfig config;
  SolverStatus status = SolverStatus::MaxIterations;
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  double d0 = 0.0;
  double f_star = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  /// Constant step entering the linear / sublinear formulas (NaN if none).
  double bound_eta = 0.0;
  std::vector<TraceRow> rows;
  /// Representatives X_t, filled when config.store_iterates is set.
  std::vector<Matrix> iterates;

  int iterations() const { return rows.empty() ? 0 : rows.back().t; }

  static const std::vector<std::string>& column_names();
  std::vector<double> row_values(std::size_t i) const;
};

/// Exp_X(-eta grad f(X)); returns X when eta == 0 or the gradient vanishes.
GrassmannPoint rsd_step(const SymmetricPSDMatrix& a, const GrassmannPoint& x,
                        double eta);

/// Step size of `rule` at X. d0 = dist(X_0, V_alpha) is only read by the
/// cos rule, fixed_eta only by StepRule::FixedEta. Throws DegenerateSpectrum
/// when a rule divides by a vanishing gamma and AngleAtBoundary when a
/// required angle reaches pi/2.
double compute_step(const SpectralData& spec, StepRule rule,
                    const GrassmannPoint& x, double d0, double fixed_eta = 0.0);

/// Runs steepest descent from x0. Adaptive and cos rules require
/// dist(X_0, V_alpha) < pi/2 and the 1/gamma rule theta_k(X_0, V_alpha) <
/// pi/2 (HypothesisViolated otherwise).
ConvergenceTrace solve_rsd(const SymmetricPSDMatrix& a, Eigen::Index k,
                           const GrassmannPoint& x0, const SolverConfig& cfg);
ConvergenceTrace solve_rsd(const SymmetricPSDMatrix& a, const SpectralData& spec,
                           const GrassmannPoint& x0, const SolverConfig& cfg);

/// X_{t+1} = orth(A X_t). The step rule of cfg is ignored. Throws
/// RankCollapse when A X_t loses rank.
ConvergenceTrace subspace_iteration(const SymmetricPSDMatrix& a, Eigen::Index k,
                                    const GrassmannPoint& x0,
                                    const SolverConfig& cfg);
ConvergenceTrace subspace_iteration(const SymmetricPSDMatrix& a,
                                    const SpectralData& spec,
                                    const GrassmannPoint& x0,
                                    const SolverConfig& cfg);

enum class Check { Pass, Fail, NotApplicable };

struct StepChecks {
  Check contraction = Check::NotApplicable;  // one-step distance contraction
  Check distance_cap = Check::NotApplicable; // dist_t^2 <= 2 d0^2
  Check lyapunov = Check::NotApplicable;     // E(t+1) <= E(t)
  Check global_bound = Check::NotApplicable; // recorded bound columns
};

struct ContractionReport {
  std::vector<StepChecks> steps;  // one per trace row
  int failures = 0;
  int checked = 0;
  bool passed() const { return failures == 0; }
  /// Number of rows where the given check failed.
  int count(Check StepChecks::*which, Check state) const;
};

/// Absolute slack used by every monitor.
inline constexpr double kBoundSlack = 1e-9;

/// Replays the one-step contraction, the factor-2 distance cap, Lyapunov
/// monotonicity and the recorded global bounds on every row. Throws
/// MissingBounds when the trace was recorded without bounds.
ContractionReport verify_contraction(const ConvergenceTrace& trace,
                                     const SpectralData& spec);

/// Largest eta in the (ascending, non-negative) grid for which no principal
/// angle to V_alpha increases by more than 1e-12 after one step, or 0 if
/// none qualifies. Throws EmptyGrid on an empty grid.
double angle_monotonicity_probe(const SymmetricPSDMatrix& a,
                                const SpectralData& spec,
                                const GrassmannPoint& x,
                                std::span<const double> eta_grid);
double angle_monotonicity_probe(const SymmetricPSDMatrix& a, Eigen::Index k,
                                const GrassmannPoint& x,
                                std::span<const double> eta_grid);

/// Iteration count after which dist(X_T, V_alpha) <= eps is guaranteed for
/// the step eta: 2 log(d0/eps) / |log(1 - 0.4 cos(d0) delta eta)| + 1.
double predicted_iterations(double d0, double eps, double delta, double eta);

}  // namespace grq
