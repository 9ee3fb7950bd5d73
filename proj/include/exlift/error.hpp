#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace exlift {

enum class ErrorCode {
  InvalidSpec,
  ParseError,
  GuardExceeded,
  DimensionMismatch,
  RingMismatch,
  NotInIdeal,
  NotIdempotent,
  NotAUnit,
  NotFredholm,
  HypothesisFailed,
  PreconditionFailed,
  SearchExhausted,
  NotDownwardClosed,
  VerificationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a distinct exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace exlift
