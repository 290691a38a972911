#pragma once

// Random problem instances shared by the unit and acceptance tests.

#include <algorithm>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "grq/problem.hpp"
#include "grq/sampling.hpp"

namespace fixture {

using Index = Eigen::Index;

/// Spectrum in [0, 15] with lambda_k - lambda_{k+1} = delta exactly.
inline std::vector<double> spectrum_with_gap(std::mt19937_64& rng, Index n,
                                             Index k, double delta) {
  std::uniform_real_distribution<double> unit(0.0, 5.0);
  std::vector<double> low(static_cast<std::size_t>(n - k));
  for (double& v : low) v = unit(rng);
  std::sort(low.begin(), low.end(), std::greater<>());
  std::vector<double> high(static_cast<std::size_t>(k));
  const double base = low.front() + delta;
  high.back() = base;
  for (std::size_t i = 0; i + 1 < high.size(); ++i) high[i] = base + unit(rng);
  std::sort(high.begin(), high.end(), std::greater<>());
  high.insert(high.end(), low.begin(), low.end());
  return high;
}

inline grq::Problem rotated_problem(std::mt19937_64& rng,
                                    std::vector<double> spectrum, Index k) {
  grq::ProblemSpec ps;
  ps.n = static_cast<Index>(spectrum.size());
  ps.k = k;
  ps.spectrum = std::move(spectrum);
  ps.rotate = true;
  ps.seed = rng();
  return grq::generate_problem(ps);
}

/// Point with largest principal angle theta_k to V_alpha and the remaining
/// angles uniform in [0, theta_k].
inline grq::GrassmannPoint point_with_max_angle(std::mt19937_64& rng,
                                                const grq::SpectralData& spec,
                                                double theta_k) {
  const Index k = spec.k();
  const Index m = std::min(k, spec.n() - k);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  grq::Vector angles = grq::Vector::Zero(k);
  angles(0) = theta_k;
  for (Index j = 1; j < m; ++j) angles(j) = theta_k * unit(rng);
  return grq::point_at_angles(rng, spec.leading_block, spec.trailing_block,
                              angles);
}

struct Instance {
  grq::Problem problem;
  grq::GrassmannPoint x;
};

/// n in {3..10}, k in {1..n/2}, delta in {0, 0.1, 1, 5}, theta_k uniform in
/// (0, pi/2 - 0.05).
inline Instance certificate_instance(std::mt19937_64& rng) {
  static constexpr double kDeltas[] = {0.0, 0.1, 1.0, 5.0};
  const Index n = std::uniform_int_distribution<Index>(3, 10)(rng);
  const Index k = std::uniform_int_distribution<Index>(1, n / 2)(rng);
  const double delta = kDeltas[std::uniform_int_distribution<int>(0, 3)(rng)];
  grq::Problem p = rotated_problem(rng, spectrum_with_gap(rng, n, k, delta), k);
  const double theta = std::uniform_real_distribution<double>(
      1e-6, std::numbers::pi / 2 - 0.05)(rng);
  grq::GrassmannPoint x = point_with_max_angle(rng, p.spec, theta);
  return {std::move(p), std::move(x)};
}

}  // namespace fixture
