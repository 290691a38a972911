#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace grq {

enum class ErrorCode {
  ShapeMismatch,
  RankDeficient,
  NotInInjectivityDomain,
  NotOrthogonal,
  NotHorizontal,
  PreconditionViolated,
  BadK,
  NotSymmetric,
  NotPositiveSemiDefinite,
  DegenerateSpectrum,
  AngleAtBoundary,
  BadEpsilon,
  HypothesisViolated,
  RankCollapse,
  MissingBounds,
  EmptyGrid,
  BadSpectrum,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can map it to a diagnostic without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace grq
