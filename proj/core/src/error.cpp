#include "grq/error.hpp"

namespace grq {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotInInjectivityDomain: return "NotInInjectivityDomain";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotHorizontal: return "NotHorizontal";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveSemiDefinite: return "NotPositiveSemiDefinite";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::AngleAtBoundary: return "AngleAtBoundary";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::RankCollapse: return "RankCollapse";
    case ErrorCode::MissingBounds: return "MissingBounds";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::BadSpectrum: return "BadSpectrum";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace grq
