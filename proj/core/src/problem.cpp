#include "grq/problem.hpp"

#include <cmath>
#include <random>
#include <string>

#include "grq/error.hpp"

namespace grq {

std::string_view to_string(SpectrumGenerator gen) noexcept {
  switch (gen) {
    case SpectrumGenerator::Linear: return "linear";
    case SpectrumGenerator::Geometric: return "geometric";
    case SpectrumGenerator::Clustered: return "clustered";
  }
  return "unknown";
}

SpectrumGenerator parse_spectrum_generator(std::string_view name) {
  if (name == "linear") return SpectrumGenerator::Linear;
  if (name == "geometric") return SpectrumGenerator::Geometric;
  if (name == "clustered") return SpectrumGenerator::Clustered;
  throw Error(ErrorCode::ParseError,
              "unknown spectrum generator '" + std::string(name) + "'");
}

std::vector<double> generate_spectrum(SpectrumGenerator gen, Eigen::Index n,
                                      Eigen::Index k, double delta) {
  if (n < 2 || k < 1 || k >= n) {
    throw Error(ErrorCode::BadK, "need n >= 2 and 1 <= k < n");
  }
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Eigen::Index i = 1; i <= n; ++i) {
    double v = 0.0;
    switch (gen) {
      case SpectrumGenerator::Linear:
        v = static_cast<double>(n - i + 1);
        break;
      case SpectrumGenerator::Geometric:
        v = std::pow(0.8, static_cast<double>(i - 1));
        break;
      case SpectrumGenerator::Clustered:
        if (!(delta >= 0.0)) {
          throw Error(ErrorCode::BadSpectrum, "clustered gap must be >= 0");
        }
        v = i <= k ? 1.0 + delta + 0.5 * static_cast<double>(k - i) / k
                   : 1.0 - 0.5 * static_cast<double>(i - k - 1) / (n - k);
        break;
    }
    out[static_cast<std::size_t>(i - 1)] = v;
  }
  return out;
}

Problem generate_problem(const ProblemSpec& ps) {
  if (ps.n < 2 || ps.k < 1 || ps.k >= ps.n) {
    throw Error(ErrorCode::BadK, "need n >= 2 and 1 <= k < n");
  }
  std::vector<double> lambda =
      ps.spectrum.empty() ? generate_spectrum(ps.generator, ps.n, ps.k, ps.delta)
                          : ps.spectrum;
  if (static_cast<Eigen::Index>(lambda.size()) != ps.n) {
    throw Error(ErrorCode::BadSpectrum,
                "spectrum has " + std::to_string(lambda.size()) +
                    " entries, expected " + std::to_string(ps.n));
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (!std::isfinite(lambda[i]) || lambda[i] < 0.0) {
      throw Error(ErrorCode::BadSpectrum, "spectrum must be non-negative");
    }
    if (i > 0 && lambda[i] > lambda[i - 1]) {
      throw Error(ErrorCode::BadSpectrum, "spectrum must be descending");
    }
  }

  const Vector d = Eigen::Map<const Vector>(lambda.data(), ps.n);
  Matrix a = d.asDiagonal();
  if (ps.rotate) {
    std::mt19937_64 rng(ps.seed);
    const Matrix q = random_orthogonal(rng, ps.n);
    a = q * d.asDiagonal() * q.transpose();
    a = 0.5 * (a + a.transpose()).eval();
  }
  SymmetricPSDMatrix psd(std::move(a));
  SpectralData spec = spectral_data(psd, ps.k);
  return Problem{std::move(psd), std::move(spec), std::move(lambda)};
}

}  // namespace grq
