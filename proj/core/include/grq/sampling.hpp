#pragma once

#include <random>

#include "grq/grassmann.hpp"

namespace grq {

/// Uniformly distributed point of Gr(n,k).
GrassmannPoint random_point(std::mt19937_64& rng, Eigen::Index n,
                            Eigen::Index k);

/// Gaussian tangent vector at x, i.e. (I - XX^T) times a Gaussian matrix.
TangentVector random_tangent(std::mt19937_64& rng, const GrassmannPoint& x);

/// Tangent at `base` with singular values exactly `angles` and random
/// singular vectors. `complement` spans the orthogonal complement of the
/// base (n x (n-k)); at most min(k, n-k) angles may be non-zero.
TangentVector tangent_with_singular_values(std::mt19937_64& rng,
                                           const GrassmannPoint& base,
                                           const Matrix& complement,
                                           const Vector& angles);

/// Point whose principal angles with `base` are `angles` (each in
/// [0, pi/2)), reached along the geodesic of a random horizontal direction.
GrassmannPoint point_at_angles(std::mt19937_64& rng, const GrassmannPoint& base,
                               const Matrix& complement, const Vector& angles);

/// Point at intrinsic distance `dist` < pi/2 from `base` in a random
/// direction.
GrassmannPoint point_at_distance(std::mt19937_64& rng,
                                 const GrassmannPoint& base, double dist);

}  // namespace grq
