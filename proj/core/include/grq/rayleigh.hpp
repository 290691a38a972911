#pragma once

// The block Rayleigh quotient f(X) = -tr(X^T A X) on Gr(n,k) for a
// symmetric positive semi-definite A.

#include <optional>

#include "grq/grassmann.hpp"

namespace grq {

/// 4 / pi^2, the quadratic-growth constant.
inline constexpr double kQuadraticGrowthConstant =
    4.0 / (3.14159265358979323846 * 3.14159265358979323846);

/// Dense symmetric PSD matrix, validated on construction:
/// ||A - A^T||_F <= 1e-10 ||A||_F and lambda_min >= -1e-10 lambda_max.
class SymmetricPSDMatrix {
 public:
  explicit SymmetricPSDMatrix(Matrix entries);

  const Matrix& entries() const noexcept { return a_; }
  Eigen::Index n() const noexcept { return a_.rows(); }

 private:
  Matrix a_;
};

struct SpectralData {
  Vector eigenvalues;           // lambda_1 >= ... >= lambda_n
  GrassmannPoint leading_block; // V_alpha
  Matrix trailing_block;        // V_beta, n x (n-k)
  double delta = 0.0;           // lambda_k - lambda_{k+1}
  double gamma = 0.0;           // 2 (lambda_1 - lambda_n)
  double f_star = 0.0;          // -(lambda_1 + ... + lambda_k)
  /// False when delta is numerically zero: V_alpha is then one of many
  /// minimizers (whichever the eigensolver returned).
  bool leading_block_unique = true;

  Eigen::Index n() const { return eigenvalues.size(); }
  Eigen::Index k() const { return leading_block.k(); }
};

SpectralData spectral_data(const SymmetricPSDMatrix& a, Eigen::Index k);

double f_value(const SymmetricPSDMatrix& a, const GrassmannPoint& x);

/// -2 (I - XX^T) A X.
TangentVector riemannian_gradient(const SymmetricPSDMatrix& a,
                                  const GrassmannPoint& x);

/// Same as riemannian_gradient but with A X supplied by the caller (used by
/// the noisy-matvec solver mode).
TangentVector gradient_from_product(const GrassmannPoint& x, const Matrix& ax);

/// Hess f(X)[G, G] = 2 <G, G X^T A X - A G>.
double hessian_quadratic_form(const SymmetricPSDMatrix& a,
                              const TangentVector& g);

/// Overload for a raw matrix; throws NotHorizontal if X^T G != 0.
double hessian_quadratic_form(const SymmetricPSDMatrix& a,
                              const GrassmannPoint& x, const Matrix& g);

/// k(n-k) x k(n-k) matrix 2 (X^T A X (x) I - I (x) X_perp^T A X_perp) in
/// the basis vec(X_perp M) of the tangent space, with column-stacking vec.
struct HessianMatrix {
  Matrix h;
  Matrix complement;  // the X_perp used for the basis
};

HessianMatrix hessian_matrix(const SymmetricPSDMatrix& a,
                             const GrassmannPoint& x);

/// Multiset {2 (lambda_i(X^T A X) - lambda_j(X_perp^T A X_perp))}, sorted
/// non-increasing. Closed form for the spectrum of hessian_matrix.
Vector hessian_eigenvalues_closed_form(const SymmetricPSDMatrix& a,
                                       const GrassmannPoint& x);

/// gamma, or DegenerateSpectrum when gamma < 1e-12 lambda_1 (every subspace
/// is then optimal and 1/gamma step rules are undefined).
double nondegenerate_gamma(const SpectralData& spec);

}  // namespace grq
