#include "exlift/corpus.hpp"

#include "exlift/error.hpp"
#include "exlift/spec_io.hpp"

namespace exlift {

namespace {

json zmod_spec(int n) { return {{"type", "zmod"}, {"n", n}}; }

CorpusEntry entry(std::string name, json ring, json gens, std::vector<std::string> tags) {
  ring["ideal"] = {{"generators", std::move(gens)}};
  return {std::move(name), std::move(ring), std::move(tags)};
}

}  // namespace

std::vector<CorpusEntry> default_corpus() {
  std::vector<CorpusEntry> out;
  for (int n : {2, 3, 4, 6, 8, 9, 16})
    for (int d = 1; d <= n; ++d)
      if (n % d == 0)
        out.push_back(entry("zmod" + std::to_string(n) + "/(" + std::to_string(d % n) + ")", zmod_spec(n),
                            json::array({d % n}), {"zmod"}));

  for (int n : {2, 4}) {
    json t = {{"type", "triangular"}, {"base", zmod_spec(n)}, {"k", 2}};
    out.push_back(entry("T2(zmod" + std::to_string(n) + ")/upper", t, json::array({json::array({{0, 1}, {0, 0}})}),
                        {"triangular"}));
  }

  json m2 = {{"type", "matrix"}, {"base", zmod_spec(2)}, {"k", 2}};
  out.push_back(entry("M2(zmod2)/0", m2, json::array(), {"matrix"}));
  out.push_back(entry("M2(zmod2)/R", m2, json::array({json::array({{1, 0}, {0, 1}})}), {"matrix"}));

  json p = {{"type", "product"}, {"left", zmod_spec(2)}, {"right", m2}};
  out.push_back(entry("zmod2xM2/0xM2", p, json::array({json::array({0, json::array({{1, 0}, {0, 1}})})}),
                      {"product"}));
  out.push_back(entry("zmod2xM2/zmod2x0", p, json::array({json::array({1, json::array({{0, 0}, {0, 0}})})}),
                      {"product"}));

  // Quotients of the above.
  json q16 = {{"type", "quotient"}, {"ring", zmod_spec(16)}, {"modulo", {{"generators", {8}}}}};
  out.push_back(entry("zmod16/(8) mod (2)", q16, json::array({2}), {"quotient"}));
  out.push_back(entry("zmod16/(8) mod (4)", q16, json::array({4}), {"quotient"}));
  json t4 = {{"type", "triangular"}, {"base", zmod_spec(4)}, {"k", 2}};
  json qt = {{"type", "quotient"}, {"ring", t4}, {"modulo", {{"generators", {json::array({{2, 0}, {0, 2}})}}}}};
  out.push_back(entry("T2(zmod4)/(2) mod upper", qt, json::array({json::array({{0, 1}, {0, 0}})}), {"quotient"}));
  json qp = {{"type", "quotient"}, {"ring", p}, {"modulo", {{"generators", {json::array({0, json::array({{1, 0}, {0, 1}})})}}}}};
  out.push_back(entry("zmod2xM2/(0xM2) mod 0", qp, json::array(), {"quotient"}));
  out.push_back(entry("zmod2xM2/(0xM2) mod R", qp, json::array({json::array({1, json::array({{0, 0}, {0, 0}})})}),
                      {"quotient"}));
  return out;
}

BuiltEntry build_entry(const CorpusEntry& e) {
  auto doc = parse_ring_spec(e.spec);
  if (!doc.ideal) fail(ErrorCode::InvalidSpec, e.name + " has no ideal");
  return {doc.ring, *doc.ideal};
}

}  // namespace exlift
