#pragma once

#include <iosfwd>

#include "exlift/error.hpp"
#include "exlift/ring.hpp"

namespace exlift::cli {

/// Process exit statuses.
enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,           // ParseError, InvalidSpec and other malformed input
  kNotFredholm = 3,
  kHypothesis = 4,      // HypothesisFailed, PreconditionFailed
  kGuard = 5,
  kVerification = 6,    // VerificationFailed or a rejected certificate
  kInternal = 7,        // SearchExhausted and anything unexpected
};

int exit_code(ErrorCode code);

/// Renders a machine report as indented "key: value" lines.
std::string render_human(const json& report);

/// Entry point shared by the binary and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace exlift::cli
