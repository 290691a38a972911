#pragma once

// Dense kernels used by the rest of the library. Everything that needs an
// SVD, a symmetric eigendecomposition or a QR factorization goes through
// these functions so the backend (Eigen) is confined to one place.

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace grq {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Compact SVD M = U diag(sigma) V^T with U: rows x r, V: cols x r,
/// r = min(rows, cols) and sigma sorted in non-increasing order.
struct CompactSvd {
  Matrix u;
  Vector sigma;
  Matrix v;
};

CompactSvd compact_svd(const Matrix& m);

Vector singular_values(const Matrix& m);

/// Symmetric eigendecomposition with eigenvalues sorted in non-increasing
/// order and the matching eigenvectors as columns.
struct SymmetricEigen {
  Vector values;
  Matrix vectors;
};

SymmetricEigen symmetric_eigen(const Matrix& a);

/// Eigenvalues of a symmetric matrix, non-increasing.
Vector symmetric_eigenvalues(const Matrix& a);

/// Q factor of the thin QR decomposition M = QR, with the signs fixed so
/// that diag(R) >= 0. M must have at least as many rows as columns.
Matrix thin_q(const Matrix& m);

/// Orthonormal basis of the orthogonal complement of span(X), taken from
/// the trailing columns of the full Householder QR of X with the sign of
/// each column fixed so that its largest-magnitude entry is positive.
Matrix orthonormal_complement(const Matrix& x);

/// Matrix of i.i.d. standard normal entries, filled column by column.
Matrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows,
                       Eigen::Index cols);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// positive-diagonal sign convention).
Matrix random_orthogonal(std::mt19937_64& rng, Eigen::Index n);

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

}  // namespace grq
