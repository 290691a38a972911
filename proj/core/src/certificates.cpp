#include "grq/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "grq/error.hpp"

namespace grq {
namespace {

constexpr double kBoundaryMargin = 1e-9;

std::string describe(const SpectralData& spec, double theta_k) {
  std::ostringstream os;
  os.precision(6);
  os << "n=" << spec.n() << " k=" << spec.k() << " delta=" << spec.delta
     << " gamma=" << spec.gamma << " theta_k=" << theta_k;
  return os.str();
}

// Quantities shared by the four checks that compare X with V_alpha.
struct MinimizerView {
  Vector angles;
  double theta_k = 0.0;
  double a = 1.0;
  double gap = 0.0;
  double dist_sq = 0.0;
  TangentVector grad;
  TangentVector log_to_min;
};

MinimizerView view(const SymmetricPSDMatrix& a, const SpectralData& spec,
                   const GrassmannPoint& x) {
  const Vector angles = principal_angle_values(x, spec.leading_block);
  const double theta_k = angles(angles.size() - 1);
  if (theta_k >= std::numbers::pi / 2.0 - kBoundaryMargin) {
    throw Error(ErrorCode::AngleAtBoundary,
                "largest principal angle to V_alpha is " +
                    std::to_string(theta_k));
  }
  return MinimizerView{angles,
                       theta_k,
                       wqc_constant_from_angle(theta_k),
                       f_value(a, x) - spec.f_star,
                       angles.squaredNorm(),
                       riemannian_gradient(a, x),
                       log_map(x, spec.leading_block)};
}

}  // namespace

double CertificateResult::relative_residual() const {
  return residual / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

CertificateResult make_certificate(double lhs, double rhs, std::string context) {
  CertificateResult out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = rhs - lhs;
  out.tolerance =
      kCertificateRelTol * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
  out.holds = out.residual >= -out.tolerance;
  out.context = std::move(context);
  return out;
}

double wqc_constant_from_angle(double theta_k) {
  if (theta_k >= std::numbers::pi / 2.0 - kBoundaryMargin) {
    throw Error(ErrorCode::AngleAtBoundary,
                "a(X) needs theta_k < pi/2, got " + std::to_string(theta_k));
  }
  if (theta_k < 1e-8) return 1.0 - theta_k * theta_k / 3.0;
  return theta_k / std::tan(theta_k);
}

double wqc_constant(const GrassmannPoint& x, const GrassmannPoint& v_alpha) {
  return wqc_constant_from_angle(max_principal_angle(x, v_alpha));
}

CertificateResult check_weak_quasi_convexity(const SymmetricPSDMatrix& a,
                                             const SpectralData& spec,
                                             const GrassmannPoint& x) {
  const MinimizerView v = view(a, spec, x);
  return make_certificate(2.0 * v.a * v.gap,
                          -inner(v.grad, v.log_to_min),
                          describe(spec, v.theta_k));
}

QuadraticGrowthCertificate check_quadratic_growth(const SymmetricPSDMatrix& a,
                                                  const SpectralData& spec,
                                                  const GrassmannPoint& x) {
  const MinimizerView v = view(a, spec, x);
  const double sin_sq = v.angles.array().sin().square().sum();
  std::string ctx = describe(spec, v.theta_k);
  return {make_certificate(kQuadraticGrowthConstant * spec.delta * v.dist_sq,
                           v.gap, ctx),
          make_certificate(spec.delta * sin_sq, v.gap, ctx)};
}

CertificateResult check_weak_strong_convexity(const SymmetricPSDMatrix& a,
                                              const SpectralData& spec,
                                              const GrassmannPoint& x) {
  const MinimizerView v = view(a, spec, x);
  const double ip = -inner(v.grad, v.log_to_min);
  return make_certificate(
      v.gap, ip / v.a - kQuadraticGrowthConstant * spec.delta * v.dist_sq,
      describe(spec, v.theta_k));
}

CertificateResult check_gradient_dominance(const SymmetricPSDMatrix& a,
                                           const SpectralData& spec,
                                           const GrassmannPoint& x) {
  const MinimizerView v = view(a, spec, x);
  const double grad_sq = v.grad.norm() * v.grad.norm();
  return make_certificate(
      4.0 * kQuadraticGrowthConstant * spec.delta * v.a * v.a * v.gap, grad_sq,
      describe(spec, v.theta_k));
}

CertificateResult check_smoothness_descent(const SymmetricPSDMatrix& a,
                                           const SpectralData& spec,
                                           const GrassmannPoint& x,
                                           const GrassmannPoint& y) {
  const TangentVector log_yx = log_map(y, x);
  const TangentVector grad_y = riemannian_gradient(a, y);
  const double dist_sq = principal_angle_values(x, y).squaredNorm();
  const double rhs =
      f_value(a, y) + inner(grad_y, log_yx) + 0.5 * spec.gamma * dist_sq;
  return make_certificate(f_value(a, x), rhs,
                          describe(spec, max_principal_angle(x, y)));
}

CertificateResult check_weak_quasi_convexity(const SymmetricPSDMatrix& a,
                                             Eigen::Index k,
                                             const GrassmannPoint& x) {
  return check_weak_quasi_convexity(a, spectral_data(a, k), x);
}

QuadraticGrowthCertificate check_quadratic_growth(const SymmetricPSDMatrix& a,
                                                  Eigen::Index k,
                                                  const GrassmannPoint& x) {
  return check_quadratic_growth(a, spectral_data(a, k), x);
}

CertificateResult check_weak_strong_convexity(const SymmetricPSDMatrix& a,
                                              Eigen::Index k,
                                              const GrassmannPoint& x) {
  return check_weak_strong_convexity(a, spectral_data(a, k), x);
}

CertificateResult check_gradient_dominance(const SymmetricPSDMatrix& a,
                                           Eigen::Index k,
                                           const GrassmannPoint& x) {
  return check_gradient_dominance(a, spectral_data(a, k), x);
}

CertificateResult check_smoothness_descent(const SymmetricPSDMatrix& a,
                                           Eigen::Index k,
                                           const GrassmannPoint& x,
                                           const GrassmannPoint& y) {
  return check_smoothness_descent(a, spectral_data(a, k), x, y);
}

double ConvexityRadius::max_angle() const {
  return std::asin(std::sqrt(std::clamp(sin_sq_bound, 0.0, 1.0)));
}

ConvexityRadius convexity_radius(const SpectralData& spec) {
  const Eigen::Index k = spec.k();
  if (2 * k > spec.n()) {
    throw Error(ErrorCode::PreconditionViolated,
                "the general convexity region needs k <= n/2");
  }
  const double denom = spec.eigenvalues(0) + spec.eigenvalues(k - 1);
  const double bound = denom > 0.0 ? spec.delta / denom : 0.0;
  return {std::clamp(bound, 0.0, 0.5), k, RadiusKind::General};
}

ConvexityRadius sphere_convexity_radius(const SpectralData& spec) {
  if (spec.k() != 1) {
    throw Error(ErrorCode::PreconditionViolated,
                "the sphere convexity region is defined for k = 1 only");
  }
  const Eigen::Index n = spec.n();
  const double denom =
      spec.delta + spec.eigenvalues(0) - spec.eigenvalues(n - 1);
  const double bound = denom > 0.0 ? spec.delta / denom : 0.0;
  return {std::clamp(bound, 0.0, 0.5), 1, RadiusKind::SphereK1};
}

double counterexample_hessian(double eps) {
  if (!std::isfinite(eps) || eps < 0.0 || eps > 1.0) {
    throw Error(ErrorCode::BadEpsilon,
                "epsilon must lie in [0, 1), got " + std::to_string(eps));
  }
  const double c = std::cos(std::numbers::pi / 4.0);
  Matrix xp = Matrix::Zero(4, 2);
  xp(0, 0) = 1.0;
  xp(1, 1) = 1.0;
  Matrix up = Matrix::Zero(4, 2);
  up(0, 0) = c;
  up(2, 0) = c;
  up(1, 1) = c;
  up(3, 1) = c;
  Matrix scale = Matrix::Zero(2, 2);
  scale(0, 0) = 1.0;
  scale(1, 1) = eps;
  const Matrix m = up * scale;
  Matrix d = Matrix::Zero(4, 2);
  d(2, 1) = 1.0;

  const Matrix proj = Matrix::Identity(4, 4) - xp * xp.transpose();
  const double first =
      -2.0 * (m.transpose() * d * d.transpose() * proj * m).trace();
  const double second =
      ((d * xp.transpose() + xp * d.transpose()) * m).squaredNorm();
  return first + second;
}

}  // namespace grq
