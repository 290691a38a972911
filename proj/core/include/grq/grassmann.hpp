#pragma once

// Geometry of the Grassmann manifold Gr(n,k) of k-dimensional subspaces of
// R^n, with points stored as orthonormal n x k representatives.

#include <utility>

#include "grq/linalg.hpp"

namespace grq {

/// A k-dimensional subspace of R^n. The representative always has
/// orthonormal columns; X and XQ (Q orthogonal) denote the same point.
class GrassmannPoint {
 public:
  /// Orthonormalizes M (thin QR, diag(R) >= 0). Throws RankDeficient when
  /// the smallest singular value of M is below 1e-10 times the largest and
  /// ShapeMismatch unless 1 <= k < n.
  static GrassmannPoint from_matrix(const Matrix& m);

  /// Wraps a representative that is already orthonormal to 1e-12 in
  /// Frobenius norm; throws NotOrthogonal otherwise.
  static GrassmannPoint from_orthonormal(Matrix x);

  const Matrix& representative() const noexcept { return rep_; }
  Eigen::Index n() const noexcept { return rep_.rows(); }
  Eigen::Index k() const noexcept { return rep_.cols(); }

 private:
  explicit GrassmannPoint(Matrix rep) : rep_(std::move(rep)) {}
  Matrix rep_;
};

GrassmannPoint make_point(const Matrix& m);

/// A tangent vector G at `base`, stored for the base's representative X and
/// satisfying X^T G = 0.
class TangentVector {
 public:
  /// Accepts G if ||X^T G||_F <= 1e-10 * max(1, ||G||_F); NotHorizontal
  /// otherwise.
  static TangentVector horizontal(const GrassmannPoint& base, Matrix g);
  static TangentVector zero(const GrassmannPoint& base);

  const GrassmannPoint& base() const noexcept { return base_; }
  const Matrix& matrix() const noexcept { return g_; }

  double norm() const { return g_.norm(); }
  double spectral_norm() const { return grq::spectral_norm(g_); }
  TangentVector scaled(double s) const { return TangentVector(base_, s * g_); }

 private:
  TangentVector(GrassmannPoint base, Matrix g)
      : base_(std::move(base)), g_(std::move(g)) {}
  friend TangentVector project_tangent(const GrassmannPoint&, const Matrix&);
  friend TangentVector log_map(const GrassmannPoint&, const GrassmannPoint&);
  GrassmannPoint base_;
  Matrix g_;
};

/// Riemannian metric <G, H> = tr(G^T H) for tangents at the same base.
double inner(const TangentVector& a, const TangentVector& b);

/// G = (I - XX^T) M.
TangentVector project_tangent(const GrassmannPoint& x, const Matrix& m);

/// span(X V cos(S) + U sin(S)) for the compact SVD G = U S V^T.
GrassmannPoint exp_map(const TangentVector& g);

/// Inverse of exp_map on the injectivity domain: U atan(S) V^T for the
/// compact SVD of (I - XX^T) Y (X^T Y)^{-1}. Throws NotInInjectivityDomain
/// when X^T Y is numerically singular (smallest singular value <= 1e-10).
TangentVector log_map(const GrassmannPoint& x, const GrassmannPoint& y);

/// Y^T X = left * diag(cos(angles)) * right^T with angles ascending.
struct PrincipalAngleDecomposition {
  Vector angles;
  Matrix left_factor;
  Matrix right_factor;
};

PrincipalAngleDecomposition principal_angles(const GrassmannPoint& x,
                                             const GrassmannPoint& y);

/// Angles only (same values as principal_angles(x, y).angles).
Vector principal_angle_values(const GrassmannPoint& x, const GrassmannPoint& y);

/// Largest principal angle.
double max_principal_angle(const GrassmannPoint& x, const GrassmannPoint& y);

/// Intrinsic distance: l2 norm of the principal angles.
double distance(const GrassmannPoint& x, const GrassmannPoint& y);

/// Block form of the CS decomposition of [Y Y_perp]^T [X X_perp]:
///
///   Y^T X       = U1 diag(I_r, C_s, 0_p) V1^T
///   Y^T X_perp  = U1 [0_{r x m}; S_s; I_p] V2^T
///   Y_perp^T X  = U2 [0_{m x r}; S_s; I_p] V1^T
///   Y_perp^T X_perp = U2 diag(-I_m, -C_s, 0_p) V2^T
///
/// with m = n - 2k + r. The middle factors are available through the
/// block_* helpers.
struct CsBlocks {
  Eigen::Index r = 0;
  Eigen::Index s = 0;
  Eigen::Index p = 0;
  Eigen::Index m = 0;
  Matrix u1, v1, u2, v2;
  Vector c;  // diagonal of C_s, non-increasing, in (0, 1)
  Vector s_diag;  // diagonal of S_s, non-decreasing, in (0, 1)

  Matrix block_yx() const;          // k x k
  Matrix block_y_xperp() const;     // k x (n-k)
  Matrix block_yperp_x() const;     // (n-k) x k
  Matrix block_yperp_xperp() const; // (n-k) x (n-k)
};

/// Threshold on |theta| (resp. |theta - pi/2|) below which an angle is
/// counted in the r (resp. p) block.
inline constexpr double kCsAngleTolerance = 1e-9;

CsBlocks cs_blocks(const Matrix& x, const Matrix& x_perp, const Matrix& y,
                   const Matrix& y_perp);

/// Connecting geodesics from span(X) to span(Y) and from span(X_perp) to
/// span(Y_perp) evaluated at t, as orthonormal representatives. Requires
/// k <= n/2 and a largest principal angle below pi/2.
std::pair<Matrix, Matrix> geodesic_pair(const Matrix& x, const Matrix& x_perp,
                                        const Matrix& y, const Matrix& y_perp,
                                        double t);

}  // namespace grq
