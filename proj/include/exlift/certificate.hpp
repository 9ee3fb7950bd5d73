#pragma once

#include <string>
#include <vector>

#include "exlift/lifting.hpp"

namespace exlift {

inline constexpr int kCertificateVersion = 1;

/// Least generating set of I: members in ascending order, each kept when it
/// is not already in the closure of the ones before it.
std::vector<Elem> canonical_generators(const Ideal& ideal);

/// Versioned JSON transcripts. Every searched witness is recorded so the
/// verifier can replay each equation and recheck that the witness is the
/// first hit of its search.
json certificate_json(const Ideal& ideal, const ReductionResult& r);
json certificate_json(const Ideal& ideal, const DiagonalizationResult& d);
json certificate_json(const Ideal& ideal, const LiftCertificate& c);

struct VerifyReport {
  bool ok = false;
  std::string kind;
  std::string contract;  // first failed contract, empty on success
};

/// Replays a certificate using ring construction and matrix arithmetic only.
/// Never throws.
VerifyReport verify_certificate(const json& cert);

}  // namespace exlift
