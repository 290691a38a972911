#pragma once

// Reference computations used only by the tests. None of them call into
// the grq geometry code, so agreement is an independent check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Orthogonal projector onto span(M) for full-column-rank M.
inline Matrix projector(const Matrix& m) {
  return m * (m.transpose() * m).ldlt().solve(m.transpose());
}

/// Cosines of the principal angles between span(X) and span(Y) (orthonormal
/// inputs), from a divide-and-conquer SVD, sorted non-increasing.
inline Vector principal_cosines(const Matrix& x, const Matrix& y) {
  Eigen::BDCSVD<Matrix> svd(y.transpose() * x);
  Vector c = svd.singularValues();
  std::sort(c.data(), c.data() + c.size(), std::greater<>());
  return c.cwiseMin(1.0);
}

/// Principal angles ascending, from the sines of the projector difference:
/// the singular values of (I - P_Y) X are sin(theta_j).
inline Vector principal_angles(const Matrix& x, const Matrix& y) {
  const Vector c = principal_cosines(x, y);
  const Matrix resid = x - y * (y.transpose() * x);
  Eigen::BDCSVD<Matrix> svd(resid);
  Vector s = svd.singularValues();
  std::sort(s.data(), s.data() + s.size());
  Vector theta(c.size());
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    theta(j) = std::atan2(std::min(s(j), 1.0), c(j));
  }
  return theta;
}

/// Unit vector (cos t, sin t, 0).
inline Vector circle_point(double t) {
  Vector v = Vector::Zero(3);
  v(0) = std::cos(t);
  v(1) = std::sin(t);
  return v;
}

/// Angle between the lines spanned by two vectors.
inline double line_angle(const Vector& a, const Vector& b) {
  const Vector ua = a.normalized();
  const Vector ub = b.normalized();
  const double c = std::abs(ua.dot(ub));
  const double s = (ua - ua.dot(ub) * ub).norm();
  return std::atan2(s, c);
}

/// One steepest-descent step of -x^T A x on the unit sphere, computed with
/// the great-circle formula x cos(|g| eta) - (g/|g|) sin(|g| eta).
inline Vector sphere_descent_step(const Matrix& a, const Vector& x, double eta) {
  const Vector ax = a * x;
  const Vector g = -2.0 * (ax - x * x.dot(ax));
  const double norm = g.norm();
  if (norm == 0.0) return x;
  return x * std::cos(norm * eta) - (g / norm) * std::sin(norm * eta);
}

/// Richardson-extrapolated central first derivative of fn at 0. Tries
/// h in {1e-3, 1e-4, 1e-5} and returns the estimate whose extrapolation
/// agrees best with the next coarser one.
inline double first_derivative(const std::function<double(double)>& fn) {
  auto central = [&](double h) { return (fn(h) - fn(-h)) / (2.0 * h); };
  auto richardson = [&](double h) {
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
  };
  const double hs[] = {1e-3, 1e-4, 1e-5};
  double best = richardson(hs[0]);
  double best_gap = std::numeric_limits<double>::infinity();
  double prev = best;
  for (int i = 1; i < 3; ++i) {
    const double cur = richardson(hs[i]);
    const double gap = std::abs(cur - prev);
    if (gap < best_gap) {
      best_gap = gap;
      best = prev;
    }
    prev = cur;
  }
  return best;
}

/// Same for the second derivative (f(h) - 2 f(0) + f(-h)) / h^2.
inline double second_derivative(const std::function<double(double)>& fn) {
  const double f0 = fn(0.0);
  auto central = [&](double h) { return (fn(h) - 2.0 * f0 + fn(-h)) / (h * h); };
  auto richardson = [&](double h) {
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
  };
  const double hs[] = {1e-3, 1e-4, 1e-5};
  double best = richardson(hs[0]);
  double best_gap = std::numeric_limits<double>::infinity();
  double prev = best;
  for (int i = 1; i < 3; ++i) {
    const double cur = richardson(hs[i]);
    const double gap = std::abs(cur - prev);
    if (gap < best_gap) {
      best_gap = gap;
      best = prev;
    }
    prev = cur;
  }
  return best;
}

/// Power-method angle recursion for k = 1 on a diagonal matrix with the
/// iterate in span(e1, e2): tan(theta') = (lambda2 / lambda1) tan(theta).
inline double next_power_angle(double theta, double lambda1, double lambda2) {
  return std::atan((lambda2 / lambda1) * std::tan(theta));
}

/// Lower bound of the certificate tolerance: -1e-7 (1 + max(|lhs|, |rhs|)).
inline double certificate_floor(double lhs, double rhs) {
  return -1e-7 * (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

}  // namespace oracle
