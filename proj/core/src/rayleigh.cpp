#include "grq/rayleigh.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "grq/error.hpp"

namespace grq {
namespace {

void require_dims(const SymmetricPSDMatrix& a, const GrassmannPoint& x) {
  if (a.n() != x.n()) {
    throw Error(ErrorCode::ShapeMismatch,
                "A is " + std::to_string(a.n()) + "x" + std::to_string(a.n()) +
                    " but X has " + std::to_string(x.n()) + " rows");
  }
}

}  // namespace

SymmetricPSDMatrix::SymmetricPSDMatrix(Matrix entries) : a_(std::move(entries)) {
  if (a_.rows() != a_.cols() || a_.rows() < 2) {
    throw Error(ErrorCode::ShapeMismatch, "A must be square with n >= 2");
  }
  if (!a_.allFinite()) {
    throw Error(ErrorCode::NotSymmetric, "A has non-finite entries");
  }
  const double asym = (a_ - a_.transpose()).norm();
  if (asym > 1e-10 * a_.norm()) {
    throw Error(ErrorCode::NotSymmetric,
                "||A - A^T||_F = " + std::to_string(asym));
  }
  a_ = 0.5 * (a_ + a_.transpose());
  const Vector ev = symmetric_eigenvalues(a_);
  const double top = ev(0);
  const double bottom = ev(ev.size() - 1);
  if (bottom < -1e-10 * std::max(top, 0.0) || (top <= 0.0 && bottom < 0.0)) {
    throw Error(ErrorCode::NotPositiveSemiDefinite,
                "smallest eigenvalue " + std::to_string(bottom));
  }
}

SpectralData spectral_data(const SymmetricPSDMatrix& a, Eigen::Index k) {
  const Eigen::Index n = a.n();
  if (k < 1 || k >= n) {
    throw Error(ErrorCode::BadK, "k = " + std::to_string(k) +
                                     " outside [1, " + std::to_string(n - 1) +
                                     "]");
  }
  const SymmetricEigen eig = symmetric_eigen(a.entries());
  SpectralData spec{eig.values, make_point(eig.vectors.leftCols(k)),
                    eig.vectors.rightCols(n - k)};
  spec.delta = std::max(0.0, eig.values(k - 1) - eig.values(k));
  spec.gamma = std::max(0.0, 2.0 * (eig.values(0) - eig.values(n - 1)));
  spec.f_star = -eig.values.head(k).sum();
  spec.leading_block_unique =
      spec.delta > 1e-12 * std::max(1.0, std::abs(eig.values(0)));
  return spec;
}

double f_value(const SymmetricPSDMatrix& a, const GrassmannPoint& x) {
  require_dims(a, x);
  const Matrix& xr = x.representative();
  return -(xr.transpose() * a.entries() * xr).trace();
}

TangentVector gradient_from_product(const GrassmannPoint& x, const Matrix& ax) {
  return project_tangent(x, ax).scaled(-2.0);
}

TangentVector riemannian_gradient(const SymmetricPSDMatrix& a,
                                  const GrassmannPoint& x) {
  require_dims(a, x);
  return gradient_from_product(x, a.entries() * x.representative());
}

double hessian_quadratic_form(const SymmetricPSDMatrix& a,
                              const TangentVector& g) {
  const GrassmannPoint& x = g.base();
  require_dims(a, x);
  const Matrix& xr = x.representative();
  const Matrix& gm = g.matrix();
  const Matrix xax = xr.transpose() * a.entries() * xr;
  const Matrix inner_term = gm * xax - a.entries() * gm;
  return 2.0 * (gm.array() * inner_term.array()).sum();
}

double hessian_quadratic_form(const SymmetricPSDMatrix& a,
                              const GrassmannPoint& x, const Matrix& g) {
  return hessian_quadratic_form(a, TangentVector::horizontal(x, g));
}

HessianMatrix hessian_matrix(const SymmetricPSDMatrix& a,
                             const GrassmannPoint& x) {
  require_dims(a, x);
  const Eigen::Index n = x.n();
  const Eigen::Index k = x.k();
  const Eigen::Index nk = n - k;
  const Matrix& xr = x.representative();
  Matrix xp = orthonormal_complement(xr);
  const Matrix xax = xr.transpose() * a.entries() * xr;
  const Matrix pap = xp.transpose() * a.entries() * xp;

  // vec(M) stacks the k columns of the (n-k) x k matrix M, so block (i, j)
  // of size (n-k) x (n-k) is 2 (xax(i,j) I - [i == j] pap).
  Matrix h = Matrix::Zero(k * nk, k * nk);
  for (Eigen::Index j = 0; j < k; ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      auto block = h.block(i * nk, j * nk, nk, nk);
      block.diagonal().setConstant(2.0 * xax(i, j));
      if (i == j) block -= 2.0 * pap;
    }
  }
  h = 0.5 * (h + h.transpose());
  return {std::move(h), std::move(xp)};
}

Vector hessian_eigenvalues_closed_form(const SymmetricPSDMatrix& a,
                                       const GrassmannPoint& x) {
  require_dims(a, x);
  const Matrix& xr = x.representative();
  const Matrix xp = orthonormal_complement(xr);
  const Vector inside = symmetric_eigenvalues(xr.transpose() * a.entries() * xr);
  const Vector outside = symmetric_eigenvalues(xp.transpose() * a.entries() * xp);
  Vector out(inside.size() * outside.size());
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < inside.size(); ++i) {
    for (Eigen::Index j = 0; j < outside.size(); ++j) {
      out(idx++) = 2.0 * (inside(i) - outside(j));
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double nondegenerate_gamma(const SpectralData& spec) {
  const double lambda1 = spec.eigenvalues(0);
  if (spec.gamma < 1e-12 * lambda1 || spec.gamma <= 0.0) {
    throw Error(ErrorCode::DegenerateSpectrum,
                "gamma = 2 (lambda_1 - lambda_n) is numerically zero");
  }
  return spec.gamma;
}

}  // namespace grq
