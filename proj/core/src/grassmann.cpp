#include "grq/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "grq/error.hpp"

namespace grq {
namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kOrthonormalTolerance = 1e-12;
constexpr double kHorizontalTolerance = 1e-10;
constexpr double kZeroTangent = 1e-14;
constexpr double kInvertibilityTolerance = 1e-10;
constexpr double kCompletionTolerance = 1e-10;

std::string shape(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const GrassmannPoint& x, const GrassmannPoint& y) {
  if (x.n() != y.n() || x.k() != y.k()) {
    throw Error(ErrorCode::ShapeMismatch,
                "points live in Gr(" + std::to_string(x.n()) + "," +
                    std::to_string(x.k()) + ") and Gr(" +
                    std::to_string(y.n()) + "," + std::to_string(y.k()) + ")");
  }
}

// Angles paired with the singular values of Y^T X (cosines, non-increasing).
// Small angles come from the sines, which are the singular values of
// (I - YY^T) X; acos alone cannot resolve angles below ~1e-8.
Vector angles_from_cosines(const Vector& cosines, const Matrix& x,
                           const Matrix& y) {
  const Eigen::Index k = cosines.size();
  const Matrix residual = x - y * (y.transpose() * x);
  const Vector sines_desc = singular_values(residual);
  Vector angles(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    if (c >= std::numbers::sqrt2 / 2.0) {
      const double s = std::clamp(sines_desc(k - 1 - i), 0.0, 1.0);
      angles(i) = std::asin(s);
    } else {
      angles(i) = std::acos(c);
    }
  }
  return angles;
}

void require_orthogonal(const Matrix& basis, const Matrix& complement,
                        const char* name) {
  const Eigen::Index n = basis.rows();
  if (complement.rows() != n || basis.cols() + complement.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(name) + " completion has shape " + shape(complement));
  }
  Matrix full(n, n);
  full << basis, complement;
  const double err = (full.transpose() * full - Matrix::Identity(n, n)).norm();
  if (err > kCompletionTolerance) {
    throw Error(ErrorCode::NotOrthogonal,
                std::string(name) + " completion is not orthogonal (residual " +
                    std::to_string(err) + ")");
  }
}

}  // namespace

GrassmannPoint GrassmannPoint::from_matrix(const Matrix& m) {
  const Eigen::Index n = m.rows();
  const Eigen::Index k = m.cols();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::ShapeMismatch,
                "representative must be n x k with 1 <= k < n, got " + shape(m));
  }
  const Vector sv = singular_values(m);
  if (!(sv(0) > 0.0) || sv(k - 1) < kRankTolerance * sv(0)) {
    throw Error(ErrorCode::RankDeficient,
                "numerical rank of the representative is below " +
                    std::to_string(k));
  }
  return GrassmannPoint(thin_q(m));
}

GrassmannPoint GrassmannPoint::from_orthonormal(Matrix x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::ShapeMismatch,
                "representative must be n x k with 1 <= k < n, got " + shape(x));
  }
  const double err = (x.transpose() * x - Matrix::Identity(k, k)).norm();
  if (err > kOrthonormalTolerance) {
    throw Error(ErrorCode::NotOrthogonal,
                "representative columns are not orthonormal (residual " +
                    std::to_string(err) + ")");
  }
  return GrassmannPoint(std::move(x));
}

GrassmannPoint make_point(const Matrix& m) {
  return GrassmannPoint::from_matrix(m);
}

TangentVector TangentVector::horizontal(const GrassmannPoint& base, Matrix g) {
  const Matrix& x = base.representative();
  if (g.rows() != x.rows() || g.cols() != x.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                "tangent " + shape(g) + " at base " + shape(x));
  }
  const double leak = (x.transpose() * g).norm();
  if (leak > kHorizontalTolerance * std::max(1.0, g.norm())) {
    throw Error(ErrorCode::NotHorizontal,
                "||X^T G||_F = " + std::to_string(leak));
  }
  return TangentVector(base, std::move(g));
}

TangentVector TangentVector::zero(const GrassmannPoint& base) {
  return TangentVector(base, Matrix::Zero(base.n(), base.k()));
}

double inner(const TangentVector& a, const TangentVector& b) {
  if (a.matrix().rows() != b.matrix().rows() ||
      a.matrix().cols() != b.matrix().cols()) {
    throw Error(ErrorCode::ShapeMismatch, "inner product of " +
                                              shape(a.matrix()) + " and " +
                                              shape(b.matrix()));
  }
  return (a.matrix().array() * b.matrix().array()).sum();
}

TangentVector project_tangent(const GrassmannPoint& x, const Matrix& m) {
  const Matrix& rep = x.representative();
  if (m.rows() != rep.rows() || m.cols() != rep.cols()) {
    throw Error(ErrorCode::ShapeMismatch,
                "cannot project " + shape(m) + " at base " + shape(rep));
  }
  return TangentVector(x, m - rep * (rep.transpose() * m));
}

GrassmannPoint exp_map(const TangentVector& g) {
  const GrassmannPoint& base = g.base();
  if (g.norm() < kZeroTangent) return base;
  const CompactSvd svd = compact_svd(g.matrix());
  const Vector cos_s = svd.sigma.array().cos();
  const Vector sin_s = svd.sigma.array().sin();
  const Matrix y = base.representative() * svd.v * cos_s.asDiagonal() +
                   svd.u * sin_s.asDiagonal();
  return make_point(y);
}

TangentVector log_map(const GrassmannPoint& x, const GrassmannPoint& y) {
  require_same_shape(x, y);
  const Matrix& xr = x.representative();
  const Matrix& yr = y.representative();
  const Matrix xty = xr.transpose() * yr;
  const Vector sv = singular_values(xty);
  if (sv(sv.size() - 1) <= kInvertibilityTolerance) {
    throw Error(ErrorCode::NotInInjectivityDomain,
                "X^T Y is singular (largest principal angle is pi/2)");
  }
  const Matrix residual = yr - xr * xty;
  // residual * (X^T Y)^{-1}, solved through the transposed system.
  const Matrix m =
      xty.transpose().partialPivLu().solve(residual.transpose()).transpose();
  const CompactSvd svd = compact_svd(m);
  const Vector atan_s = svd.sigma.array().atan();
  Matrix g = svd.u * atan_s.asDiagonal() * svd.v.transpose();
  // Remove the rounding-level component along X.
  g -= xr * (xr.transpose() * g);
  return TangentVector(x, std::move(g));
}

PrincipalAngleDecomposition principal_angles(const GrassmannPoint& x,
                                             const GrassmannPoint& y) {
  require_same_shape(x, y);
  const Matrix& xr = x.representative();
  const Matrix& yr = y.representative();
  const CompactSvd svd = compact_svd(yr.transpose() * xr);
  return {angles_from_cosines(svd.sigma, xr, yr), svd.u, svd.v};
}

Vector principal_angle_values(const GrassmannPoint& x, const GrassmannPoint& y) {
  require_same_shape(x, y);
  const Matrix& xr = x.representative();
  const Matrix& yr = y.representative();
  return angles_from_cosines(singular_values(yr.transpose() * xr), xr, yr);
}

double max_principal_angle(const GrassmannPoint& x, const GrassmannPoint& y) {
  const Vector angles = principal_angle_values(x, y);
  return angles(angles.size() - 1);
}

double distance(const GrassmannPoint& x, const GrassmannPoint& y) {
  return principal_angle_values(x, y).norm();
}

Matrix CsBlocks::block_yx() const {
  const Eigen::Index k = r + s + p;
  Matrix d = Matrix::Zero(k, k);
  for (Eigen::Index i = 0; i < r; ++i) d(i, i) = 1.0;
  for (Eigen::Index i = 0; i < s; ++i) d(r + i, r + i) = c(i);
  return d;
}

Matrix CsBlocks::block_y_xperp() const {
  const Eigen::Index k = r + s + p;
  Matrix d = Matrix::Zero(k, m + s + p);
  for (Eigen::Index i = 0; i < s; ++i) d(r + i, m + i) = s_diag(i);
  for (Eigen::Index i = 0; i < p; ++i) d(r + s + i, m + s + i) = 1.0;
  return d;
}

Matrix CsBlocks::block_yperp_x() const {
  const Eigen::Index k = r + s + p;
  Matrix d = Matrix::Zero(m + s + p, k);
  for (Eigen::Index i = 0; i < s; ++i) d(m + i, r + i) = s_diag(i);
  for (Eigen::Index i = 0; i < p; ++i) d(m + s + i, r + s + i) = 1.0;
  return d;
}

Matrix CsBlocks::block_yperp_xperp() const {
  const Eigen::Index nk = m + s + p;
  Matrix d = Matrix::Zero(nk, nk);
  for (Eigen::Index i = 0; i < m; ++i) d(i, i) = -1.0;
  for (Eigen::Index i = 0; i < s; ++i) d(m + i, m + i) = -c(i);
  return d;
}

CsBlocks cs_blocks(const Matrix& x, const Matrix& x_perp, const Matrix& y,
                   const Matrix& y_perp) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (y.rows() != n || y.cols() != k || k < 1 || k >= n) {
    throw Error(ErrorCode::ShapeMismatch,
                "X is " + shape(x) + ", Y is " + shape(y));
  }
  require_orthogonal(x, x_perp, "[X X_perp]");
  require_orthogonal(y, y_perp, "[Y Y_perp]");

  CsBlocks cs;
  const CompactSvd svd = compact_svd(y.transpose() * x);
  const Vector angles = angles_from_cosines(svd.sigma, x, y);
  for (Eigen::Index i = 0; i < k; ++i) {
    if (angles(i) < kCsAngleTolerance) {
      ++cs.r;
    } else if (std::abs(angles(i) - std::numbers::pi / 2.0) < kCsAngleTolerance) {
      ++cs.p;
    }
  }
  cs.s = k - cs.r - cs.p;
  cs.m = n - 2 * k + cs.r;
  if (cs.m < 0) {
    throw Error(ErrorCode::PreconditionViolated,
                "inconsistent zero-angle count for k > n/2");
  }
  cs.u1 = svd.u;
  cs.v1 = svd.v;
  cs.c = svd.sigma.segment(cs.r, cs.s);
  cs.s_diag.resize(cs.s);

  const Eigen::Index nk = n - k;
  const Eigen::Index sp = cs.s + cs.p;
  // Rows r.. of U1^T Y^T X_perp are mutually orthogonal with norms sin(theta);
  // normalized, they are the trailing s + p columns of V2.
  const Matrix w = cs.u1.transpose() * (y.transpose() * x_perp);
  const Matrix z = (y_perp.transpose() * x) * cs.v1;
  Matrix v2_tail(nk, sp);
  Matrix u2_tail(nk, sp);
  for (Eigen::Index j = 0; j < sp; ++j) {
    const double beta = w.row(cs.r + j).norm();
    if (j < cs.s) cs.s_diag(j) = beta;
    v2_tail.col(j) = w.row(cs.r + j).transpose() / beta;
    u2_tail.col(j) = z.col(cs.r + j) / beta;
  }
  const Matrix v2_head =
      sp == 0 ? Matrix(Matrix::Identity(nk, nk)) : orthonormal_complement(v2_tail);
  cs.v2.resize(nk, nk);
  cs.v2 << v2_head, v2_tail;
  cs.u2.resize(nk, nk);
  cs.u2 << -(y_perp.transpose() * x_perp) * v2_head, u2_tail;
  return cs;
}

std::pair<Matrix, Matrix> geodesic_pair(const Matrix& x, const Matrix& x_perp,
                                        const Matrix& y, const Matrix& y_perp,
                                        double t) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  if (2 * k > n) {
    throw Error(ErrorCode::PreconditionViolated,
                "paired geodesics need k <= n/2");
  }
  const CsBlocks cs = cs_blocks(x, x_perp, y, y_perp);
  if (cs.p > 0) {
    throw Error(ErrorCode::PreconditionViolated,
                "largest principal angle is pi/2");
  }
  Vector theta = Vector::Zero(k);
  for (Eigen::Index i = 0; i < cs.s; ++i) {
    theta(cs.r + i) = std::atan2(cs.s_diag(i), cs.c(i));
  }
  const Vector cos_t = (t * theta).array().cos();
  const Vector sin_t = (t * theta).array().sin();
  const Eigen::Index free = n - 2 * k;
  const Matrix x_v1 = x * cs.v1;
  const Matrix xp_v2 = x_perp * cs.v2;

  Matrix gamma = x_v1 * cos_t.asDiagonal() +
                 xp_v2.rightCols(k) * sin_t.asDiagonal();
  Matrix gamma_perp(n, n - k);
  gamma_perp.leftCols(free) = xp_v2.leftCols(free);
  gamma_perp.rightCols(k) = xp_v2.rightCols(k) * cos_t.asDiagonal() -
                            x_v1 * sin_t.asDiagonal();
  return {std::move(gamma), std::move(gamma_perp)};
}

}  // namespace grq
