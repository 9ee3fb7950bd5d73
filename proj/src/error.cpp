#include "exlift/error.hpp"

namespace exlift {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GuardExceeded: return "GuardExceeded";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotInIdeal: return "NotInIdeal";
    case ErrorCode::NotIdempotent: return "NotIdempotent";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotFredholm: return "NotFredholm";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::NotDownwardClosed: return "NotDownwardClosed";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace exlift
