#include "exlift/spec_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "exlift/error.hpp"

namespace exlift {

namespace {

void only_fields(const json& spec, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : spec.items()) {
    if (!ok.count(key)) fail(ErrorCode::InvalidSpec, "unknown field '" + key + "' in " + spec.dump());
  }
  for (const char* key : allowed)
    if (!spec.contains(key)) fail(ErrorCode::InvalidSpec, std::string("missing field '") + key + "'");
}

int positive_int(const json& spec, const char* key) {
  const auto& v = spec.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    fail(ErrorCode::InvalidSpec, std::string("field '") + key + "' must be a positive integer");
  return v.get<int>();
}

}  // namespace

Ideal parse_ideal(const RingPtr& ring, const json& ideal) {
  if (!ideal.is_object()) fail(ErrorCode::InvalidSpec, "ideal must be an object");
  only_fields(ideal, {"generators"});
  const auto& gens = ideal.at("generators");
  if (!gens.is_array()) fail(ErrorCode::InvalidSpec, "ideal.generators must be a list");
  std::vector<Elem> g;
  for (const auto& d : gens) g.push_back(ring->parse_element(d));
  return Ideal::closure(ring, g);
}

RingPtr build_ring(const json& spec) {
  if (!spec.is_object() || !spec.contains("type") || !spec.at("type").is_string())
    fail(ErrorCode::InvalidSpec, "ring spec needs a string 'type'");
  const auto type = spec.at("type").get<std::string>();
  if (type == "zmod") {
    only_fields(spec, {"type", "n"});
    return zmod(static_cast<std::size_t>(positive_int(spec, "n")));
  }
  if (type == "matrix" || type == "triangular") {
    only_fields(spec, {"type", "base", "k"});
    auto base = build_ring(spec.at("base"));
    const int k = positive_int(spec, "k");
    return type == "matrix" ? matrix_ring(base, k) : triangular_ring(base, k);
  }
  if (type == "product") {
    only_fields(spec, {"type", "left", "right"});
    return product_ring(build_ring(spec.at("left")), build_ring(spec.at("right")));
  }
  if (type == "quotient") {
    only_fields(spec, {"type", "ring", "modulo"});
    auto parent = build_ring(spec.at("ring"));
    return quotient_ring(parse_ideal(parent, spec.at("modulo")));
  }
  if (type == "corner") {
    only_fields(spec, {"type", "ring", "idempotent"});
    auto parent = build_ring(spec.at("ring"));
    return corner_ring(parent, parent->parse_element(spec.at("idempotent")));
  }
  if (type == "opposite") {
    only_fields(spec, {"type", "ring"});
    return opposite_ring(build_ring(spec.at("ring")));
  }
  fail(ErrorCode::InvalidSpec, "unknown ring type '" + type + "'");
}

RingSpecFile parse_ring_spec(const json& doc) {
  if (!doc.is_object()) fail(ErrorCode::InvalidSpec, "ring spec must be an object");
  json recipe = doc;
  RingSpecFile out;
  std::optional<json> ideal;
  if (recipe.contains("ideal")) {
    ideal = recipe.at("ideal");
    recipe.erase("ideal");
  }
  out.ring = build_ring(recipe);
  if (ideal) out.ideal = parse_ideal(out.ring, *ideal);
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace exlift
