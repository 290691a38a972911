#include "grq/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace grq {

CompactSvd compact_svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Vector singular_values(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

SymmetricEigen symmetric_eigen(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a);
  // Eigen returns ascending order.
  const Eigen::Index n = a.rows();
  SymmetricEigen out{Vector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = eig.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = eig.eigenvectors().col(n - 1 - i);
  }
  return out;
}

Vector symmetric_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().reverse();
}

Matrix thin_q(const Matrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::HouseholderQR<Matrix> qr(m);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

Matrix orthonormal_complement(const Matrix& x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index k = x.cols();
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix full = qr.householderQ() * Matrix::Identity(n, n);
  Matrix comp = full.rightCols(n - k);
  for (Eigen::Index j = 0; j < comp.cols(); ++j) {
    Eigen::Index idx = 0;
    comp.col(j).cwiseAbs().maxCoeff(&idx);
    if (comp(idx, j) < 0.0) comp.col(j) = -comp.col(j);
  }
  return comp;
}

Matrix gaussian_matrix(std::mt19937_64& rng, Eigen::Index rows,
                       Eigen::Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Matrix random_orthogonal(std::mt19937_64& rng, Eigen::Index n) {
  return thin_q(gaussian_matrix(rng, n, n));
}

}  // namespace grq
