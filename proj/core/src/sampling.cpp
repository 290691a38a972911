#include "grq/sampling.hpp"

#include <string>

#include "grq/error.hpp"

namespace grq {

GrassmannPoint random_point(std::mt19937_64& rng, Eigen::Index n,
                            Eigen::Index k) {
  return make_point(gaussian_matrix(rng, n, k));
}

TangentVector random_tangent(std::mt19937_64& rng, const GrassmannPoint& x) {
  return project_tangent(x, gaussian_matrix(rng, x.n(), x.k()));
}

TangentVector tangent_with_singular_values(std::mt19937_64& rng,
                                           const GrassmannPoint& base,
                                           const Matrix& complement,
                                           const Vector& angles) {
  const Eigen::Index n = base.n();
  const Eigen::Index k = base.k();
  if (angles.size() != k || complement.rows() != n ||
      complement.cols() != n - k) {
    throw Error(ErrorCode::ShapeMismatch,
                "angle vector or complement does not match Gr(" +
                    std::to_string(n) + "," + std::to_string(k) + ")");
  }
  const Eigen::Index rank = std::min(k, n - k);
  for (Eigen::Index i = rank; i < k; ++i) {
    if (angles(i) != 0.0) {
      throw Error(ErrorCode::PreconditionViolated,
                  "at most min(k, n-k) principal angles can be non-zero");
    }
  }
  const Matrix left = complement * thin_q(gaussian_matrix(rng, n - k, rank));
  const Matrix right = random_orthogonal(rng, k);
  Matrix g = left * angles.head(rank).asDiagonal() *
             right.leftCols(rank).transpose();
  return TangentVector::horizontal(base, std::move(g));
}

GrassmannPoint point_at_angles(std::mt19937_64& rng, const GrassmannPoint& base,
                               const Matrix& complement, const Vector& angles) {
  return exp_map(tangent_with_singular_values(rng, base, complement, angles));
}

GrassmannPoint point_at_distance(std::mt19937_64& rng,
                                 const GrassmannPoint& base, double dist) {
  TangentVector g = random_tangent(rng, base);
  const double norm = g.norm();
  if (norm == 0.0 || dist == 0.0) return base;
  return exp_map(g.scaled(dist / norm));
}

}  // namespace grq
