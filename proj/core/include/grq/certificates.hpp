#pragma once

// Numerical certificates for the convexity-like inequalities satisfied by
// the block Rayleigh quotient around its minimizer V_alpha.

#include <string>

#include "grq/rayleigh.hpp"

namespace grq {

/// lhs <= rhs checked in floating point. residual = rhs - lhs, so a
/// non-negative residual means the inequality holds exactly.
struct CertificateResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool holds = false;
  std::string context;

  /// residual / (1 + max(|lhs|, |rhs|))
  double relative_residual() const;
};

/// Relative tolerance used by every certificate:
/// holds <=> residual >= -1e-7 (1 + max(|lhs|, |rhs|)).
inline constexpr double kCertificateRelTol = 1e-7;

CertificateResult make_certificate(double lhs, double rhs, std::string context);

/// a(X) = theta_k / tan(theta_k) for the largest principal angle between X
/// and V_alpha, with 0 / tan 0 = 1. Throws AngleAtBoundary when
/// theta_k >= pi/2 - 1e-9.
double wqc_constant(const GrassmannPoint& x, const GrassmannPoint& v_alpha);

/// Same, from the angle directly.
double wqc_constant_from_angle(double theta_k);

/// 2 a(X) (f(X) - f*) <= <grad f(X), -Log_X(V_alpha)>.
CertificateResult check_weak_quasi_convexity(const SymmetricPSDMatrix& a,
                                             const SpectralData& spec,
                                             const GrassmannPoint& x);
CertificateResult check_weak_quasi_convexity(const SymmetricPSDMatrix& a,
                                             Eigen::Index k,
                                             const GrassmannPoint& x);

/// c_Q delta dist^2(X, V_alpha) <= f(X) - f*. Also reports the sharper
/// intermediate bound delta * sum_j sin^2(theta_j) <= f(X) - f*.
struct QuadraticGrowthCertificate {
  CertificateResult growth;
  CertificateResult sine_bound;
};

QuadraticGrowthCertificate check_quadratic_growth(const SymmetricPSDMatrix& a,
                                                  const SpectralData& spec,
                                                  const GrassmannPoint& x);
QuadraticGrowthCertificate check_quadratic_growth(const SymmetricPSDMatrix& a,
                                                  Eigen::Index k,
                                                  const GrassmannPoint& x);

/// f(X) - f* <= (1/a(X)) <grad f(X), -Log_X(V_alpha)> - c_Q delta dist^2.
CertificateResult check_weak_strong_convexity(const SymmetricPSDMatrix& a,
                                              const SpectralData& spec,
                                              const GrassmannPoint& x);
CertificateResult check_weak_strong_convexity(const SymmetricPSDMatrix& a,
                                              Eigen::Index k,
                                              const GrassmannPoint& x);

/// 4 c_Q delta a(X)^2 (f(X) - f*) <= ||grad f(X)||^2.
CertificateResult check_gradient_dominance(const SymmetricPSDMatrix& a,
                                           const SpectralData& spec,
                                           const GrassmannPoint& x);
CertificateResult check_gradient_dominance(const SymmetricPSDMatrix& a,
                                           Eigen::Index k,
                                           const GrassmannPoint& x);

/// f(X) <= f(Y) + <grad f(Y), Log_Y(X)> + (gamma/2) dist^2(X, Y).
/// Throws NotInInjectivityDomain when Log_Y(X) is undefined.
CertificateResult check_smoothness_descent(const SymmetricPSDMatrix& a,
                                           const SpectralData& spec,
                                           const GrassmannPoint& x,
                                           const GrassmannPoint& y);
CertificateResult check_smoothness_descent(const SymmetricPSDMatrix& a,
                                           Eigen::Index k,
                                           const GrassmannPoint& x,
                                           const GrassmannPoint& y);

enum class RadiusKind { General, SphereK1 };

/// Region sin^2(theta_k(X, V_alpha)) <= sin_sq_bound on which f is
/// geodesically convex.
struct ConvexityRadius {
  double sin_sq_bound = 0.0;
  Eigen::Index k = 0;
  RadiusKind kind = RadiusKind::General;

  /// Largest admissible theta_k, asin(sqrt(sin_sq_bound)).
  double max_angle() const;
};

/// General bound delta / (lambda_1 + lambda_k); requires k <= n/2
/// (PreconditionViolated otherwise).
ConvexityRadius convexity_radius(const SpectralData& spec);

/// k = 1 bound delta / (delta + lambda_1 - lambda_n); requires k = 1.
ConvexityRadius sphere_convexity_radius(const SpectralData& spec);

/// Hessian form of the cost used by the earlier convexity claim on
/// N_*(pi/4), evaluated at the explicit 4 x 2 point of the counterexample:
///
///   -2 tr(M^T D D^T (I - X_p X_p^T) M) + ||(D X_p^T + X_p D^T) M||_F^2
///
/// with X_p = [e1 e2], U_p = c [e1+e3, e2+e4], M = U_p diag(1, eps),
/// D = e3 e2^T and c = cos(pi/4). This is a different parameterization from
/// f and is evaluated verbatim; the value is (eps^2 - 1) c^2, negative for
/// eps < 1. eps = 1 is accepted as the limiting case (value 0); anything
/// outside [0, 1] throws BadEpsilon.
double counterexample_hessian(double eps);

}  // namespace grq
