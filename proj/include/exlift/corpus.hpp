#pragma once

#include <string>
#include <vector>

#include "exlift/ring.hpp"

namespace exlift {

/// A regression case: a ring-spec document with its ideal, plus tags.
struct CorpusEntry {
  std::string name;
  json spec;  // ring recipe with a top-level "ideal"
  std::vector<std::string> tags;
};

/// zmod(n) for n in {2,3,4,6,8,9,16} with every ideal, the triangular and
/// 2x2 matrix cases, the product with its factor ideals, and a few
/// quotients of those.
std::vector<CorpusEntry> default_corpus();

struct BuiltEntry {
  RingPtr ring;
  Ideal ideal;
};

BuiltEntry build_entry(const CorpusEntry& entry);

}  // namespace exlift
