#pragma once

// Synthetic test problems A = Q diag(lambda) Q^T with controlled spectra.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "grq/rayleigh.hpp"

namespace grq {

enum class SpectrumGenerator { Linear, Geometric, Clustered };

std::string_view to_string(SpectrumGenerator gen) noexcept;
/// Throws ParseError for anything but "linear", "geometric", "clustered".
SpectrumGenerator parse_spectrum_generator(std::string_view name);

struct ProblemSpec {
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  /// Explicit descending spectrum; when empty, `generator` is used.
  std::vector<double> spectrum;
  SpectrumGenerator generator = SpectrumGenerator::Linear;
  double delta = 1.0;  // eigengap at position k for the clustered generator
  bool rotate = false;
  std::uint64_t seed = 0;
};

/// Spectrum of a generator:
///   linear     lambda_i = n - i + 1
///   geometric  lambda_i = 0.8^(i-1)
///   clustered  lambda_i = 1 + delta + 0.5 (k - i) / k for i <= k,
///              lambda_i = 1 - 0.5 (i - k - 1) / (n - k) otherwise
std::vector<double> generate_spectrum(SpectrumGenerator gen, Eigen::Index n,
                                      Eigen::Index k, double delta);

struct Problem {
  SymmetricPSDMatrix a;
  SpectralData spec;
  std::vector<double> spectrum;  // the prescribed eigenvalues
};

/// Throws BadK for k outside [1, n), BadSpectrum for negative, unsorted or
/// wrongly sized spectra (or a negative clustered gap).
Problem generate_problem(const ProblemSpec& ps);

}  // namespace grq
