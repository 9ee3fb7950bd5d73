#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exlift/ring.hpp"

namespace exlift {

/// Builds a ring from its JSON recipe. Recognized shapes:
///
///   {"type": "zmod", "n": 4}
///   {"type": "matrix", "base": <spec>, "k": 2}
///   {"type": "triangular", "base": <spec>, "k": 2}
///   {"type": "product", "left": <spec>, "right": <spec>}
///   {"type": "quotient", "ring": <spec>, "modulo": {"generators": [...]}}
///   {"type": "corner", "ring": <spec>, "idempotent": <element>}
///   {"type": "opposite", "ring": <spec>}
///
/// Unknown fields are rejected with InvalidSpec.
RingPtr build_ring(const json& spec);

/// Generators given as element descriptors of `ring`.
Ideal parse_ideal(const RingPtr& ring, const json& ideal);

/// A ring-spec file: a ring recipe, plus an optional top-level
/// `"ideal": {"generators": [...]}` naming the ideal the commands act on.
struct RingSpecFile {
  RingPtr ring;
  std::optional<Ideal> ideal;
};

RingSpecFile parse_ring_spec(const json& doc);
json load_json_file(const std::string& path);

}  // namespace exlift
