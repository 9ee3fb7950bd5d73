#include "exlift/ring.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

#include "exlift/error.hpp"

namespace exlift {

namespace {

constexpr Elem kNone = 0xFFFFFFFFu;

std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t bound) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > bound / base) return bound + 1;
    r *= base;
  }
  return r;
}

void require_size(std::size_t size, const std::string& what) {
  if (size > guards().carrier) {
    fail(ErrorCode::GuardExceeded, what + " would have " + std::to_string(size) +
                                       " elements (guard " +
                                       std::to_string(guards().carrier) + ")");
  }
}

}  // namespace

Guards& guards() {
  static Guards g = [] {
    Guards init;
    if (const char* env = std::getenv("EXLIFT_GUARD")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && *end == '\0' && v > 0) init.carrier = v;
    }
    return init;
  }();
  return g;
}

struct FiniteRing::Access {
  static std::shared_ptr<FiniteRing> make() {
    return std::shared_ptr<FiniteRing>(new FiniteRing());
  }
  static void finalize(FiniteRing& r) { r.finalize(); }
  static FiniteRing& mut(FiniteRing& r) { return r; }
};

// ---------------------------------------------------------------------------
// element arithmetic

Elem FiniteRing::compute_add(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::ZMod:
      return static_cast<Elem>((static_cast<std::size_t>(a) + b) % size_);
    case Kind::Matrix:
    case Kind::Triangular: {
      const std::size_t q = base_->size();
      std::size_t out = 0, place = 1;
      std::size_t x = a, y = b;
      for (std::size_t l = 0; l < slots_; ++l) {
        out += base_->add(static_cast<Elem>(x % q), static_cast<Elem>(y % q)) * place;
        x /= q;
        y /= q;
        place *= q;
      }
      return static_cast<Elem>(out);
    }
    case Kind::Product: {
      auto [a1, a2] = components(a);
      auto [b1, b2] = components(b);
      return pair(base_->add(a1, b1), second_->add(a2, b2));
    }
    case Kind::Quotient:
      return back_map_[base_->add(reps_[a], reps_[b])];
    case Kind::Corner:
      return back_map_[base_->add(reps_[a], reps_[b])];
    case Kind::Opposite:
      return base_->add(a, b);
  }
  return 0;
}

Elem FiniteRing::compute_mul(Elem a, Elem b) const {
  switch (kind_) {
    case Kind::ZMod:
      return static_cast<Elem>((static_cast<std::size_t>(a) * b) % size_);
    case Kind::Matrix:
    case Kind::Triangular: {
      const auto x = entries(a);
      const auto y = entries(b);
      const int k = dim_;
      std::vector<Elem> z(static_cast<std::size_t>(k * k), base_->zero());
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
          Elem acc = base_->zero();
          for (int l = 0; l < k; ++l)
            acc = base_->add(acc, base_->mul(x[i * k + l], y[l * k + j]));
          z[i * k + j] = acc;
        }
      return from_entries(z);
    }
    case Kind::Product: {
      auto [a1, a2] = components(a);
      auto [b1, b2] = components(b);
      return pair(base_->mul(a1, b1), second_->mul(a2, b2));
    }
    case Kind::Quotient:
      return back_map_[base_->mul(reps_[a], reps_[b])];
    case Kind::Corner:
      return back_map_[base_->mul(reps_[a], reps_[b])];
    case Kind::Opposite:
      return base_->mul(b, a);
  }
  return 0;
}

void FiniteRing::finalize() {
  neg_table_.resize(size_);
  for (Elem a = 0; a < size_; ++a) {
    switch (kind_) {
      case Kind::ZMod:
        neg_table_[a] = static_cast<Elem>((size_ - a) % size_);
        break;
      case Kind::Matrix:
      case Kind::Triangular: {
        auto e = entries(a);
        for (auto& x : e) x = base_->neg(x);
        neg_table_[a] = from_entries(e);
        break;
      }
      case Kind::Product: {
        auto [x, y] = components(a);
        neg_table_[a] = pair(base_->neg(x), second_->neg(y));
        break;
      }
      case Kind::Quotient:
      case Kind::Corner:
        neg_table_[a] = back_map_[base_->neg(reps_[a])];
        break;
      case Kind::Opposite:
        neg_table_[a] = base_->neg(a);
        break;
    }
  }
  if (size_ <= guards().table) {
    add_table_.resize(size_ * size_);
    mul_table_.resize(size_ * size_);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b) {
        add_table_[a * size_ + b] = compute_add(a, b);
        mul_table_[a * size_ + b] = compute_mul(a, b);
      }
  }
}

// ---------------------------------------------------------------------------
// memoized element classes

const std::vector<Elem>& FiniteRing::units() const {
  std::call_once(units_once_, [this] {
    inverse_.assign(size_, kNone);
    for (Elem a = 0; a < size_; ++a) {
      if (inverse_[a] != kNone) continue;
      for (Elem b = 0; b < size_; ++b) {
        if (mul(a, b) == one_ && mul(b, a) == one_) {
          inverse_[a] = b;
          inverse_[b] = a;
          break;
        }
      }
    }
    for (Elem a = 0; a < size_; ++a)
      if (inverse_[a] != kNone) units_.push_back(a);
  });
  return units_;
}

std::optional<Elem> FiniteRing::inverse(Elem a) const {
  units();
  if (a >= size_ || inverse_[a] == kNone) return std::nullopt;
  return inverse_[a];
}

const std::vector<Elem>& FiniteRing::idempotents() const {
  std::call_once(idem_once_, [this] {
    for (Elem a = 0; a < size_; ++a)
      if (mul(a, a) == a) idempotents_.push_back(a);
  });
  return idempotents_;
}

// ---------------------------------------------------------------------------
// structure access

std::vector<Elem> FiniteRing::entries(Elem a) const {
  if (kind_ != Kind::Matrix && kind_ != Kind::Triangular)
    fail(ErrorCode::InvalidSpec, "entries() on a non-matrix ring");
  const std::size_t q = base_->size();
  const int k = dim_;
  std::vector<Elem> out(static_cast<std::size_t>(k * k), base_->zero());
  std::size_t x = a;
  if (kind_ == Kind::Matrix) {
    for (auto& e : out) {
      e = static_cast<Elem>(x % q);
      x /= q;
    }
  } else {
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        out[i * k + j] = static_cast<Elem>(x % q);
        x /= q;
      }
  }
  return out;
}

Elem FiniteRing::from_entries(std::span<const Elem> e) const {
  if (kind_ != Kind::Matrix && kind_ != Kind::Triangular)
    fail(ErrorCode::InvalidSpec, "from_entries() on a non-matrix ring");
  const int k = dim_;
  if (e.size() != static_cast<std::size_t>(k * k))
    fail(ErrorCode::DimensionMismatch, "matrix entry count");
  const std::size_t q = base_->size();
  std::size_t out = 0, place = 1;
  if (kind_ == Kind::Matrix) {
    for (Elem x : e) {
      out += x * place;
      place *= q;
    }
  } else {
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (j < i) {
          if (e[i * k + j] != base_->zero())
            fail(ErrorCode::InvalidSpec, "nonzero entry below the diagonal");
          continue;
        }
        out += e[i * k + j] * place;
        place *= q;
      }
  }
  return static_cast<Elem>(out);
}

std::pair<Elem, Elem> FiniteRing::components(Elem a) const {
  if (kind_ != Kind::Product) fail(ErrorCode::InvalidSpec, "components() on a non-product ring");
  const auto q = static_cast<Elem>(base_->size());
  return {a % q, a / q};
}

Elem FiniteRing::pair(Elem left, Elem right) const {
  if (kind_ != Kind::Product) fail(ErrorCode::InvalidSpec, "pair() on a non-product ring");
  return static_cast<Elem>(left + base_->size() * right);
}

Elem FiniteRing::project(Elem parent_elem) const {
  if (kind_ != Kind::Quotient) fail(ErrorCode::InvalidSpec, "project() on a non-quotient ring");
  return back_map_.at(parent_elem);
}

Elem FiniteRing::lift(Elem coset) const {
  if (kind_ != Kind::Quotient) fail(ErrorCode::InvalidSpec, "lift() on a non-quotient ring");
  return reps_.at(coset);
}

Elem FiniteRing::embed(Elem a) const {
  if (kind_ != Kind::Corner) fail(ErrorCode::InvalidSpec, "embed() on a non-corner ring");
  return reps_.at(a);
}

std::optional<Elem> FiniteRing::from_parent(Elem parent_elem) const {
  if (kind_ != Kind::Corner) fail(ErrorCode::InvalidSpec, "from_parent() on a non-corner ring");
  Elem v = back_map_.at(parent_elem);
  if (v == kNone) return std::nullopt;
  return v;
}

// ---------------------------------------------------------------------------
// descriptors

json FiniteRing::describe(Elem a) const {
  if (a >= size_) fail(ErrorCode::InvalidSpec, "element index out of range");
  switch (kind_) {
    case Kind::ZMod:
      return a;
    case Kind::Matrix:
    case Kind::Triangular: {
      auto e = entries(a);
      json rows = json::array();
      for (int i = 0; i < dim_; ++i) {
        json row = json::array();
        for (int j = 0; j < dim_; ++j) row.push_back(base_->describe(e[i * dim_ + j]));
        rows.push_back(row);
      }
      return rows;
    }
    case Kind::Product: {
      auto [x, y] = components(a);
      return json::array({base_->describe(x), second_->describe(y)});
    }
    case Kind::Quotient:
    case Kind::Corner:
      return base_->describe(reps_[a]);
    case Kind::Opposite:
      return base_->describe(a);
  }
  return nullptr;
}

Elem FiniteRing::parse_element(const json& j) const {
  switch (kind_) {
    case Kind::ZMod: {
      if (!j.is_number_integer()) fail(ErrorCode::ParseError, "zmod element must be an integer");
      auto v = j.get<long long>();
      if (v < 0 || static_cast<std::size_t>(v) >= size_)
        fail(ErrorCode::ParseError, "zmod element " + j.dump() + " out of range");
      return static_cast<Elem>(v);
    }
    case Kind::Matrix:
    case Kind::Triangular: {
      if (!j.is_array() || j.size() != static_cast<std::size_t>(dim_))
        fail(ErrorCode::ParseError, "matrix element must have " + std::to_string(dim_) + " rows");
      std::vector<Elem> e;
      for (const auto& row : j) {
        if (!row.is_array() || row.size() != static_cast<std::size_t>(dim_))
          fail(ErrorCode::ParseError, "matrix row must have " + std::to_string(dim_) + " entries");
        for (const auto& x : row) e.push_back(base_->parse_element(x));
      }
      try {
        return from_entries(e);
      } catch (const Error& err) {
        fail(ErrorCode::ParseError, err.what());
      }
    }
    case Kind::Product:
      if (!j.is_array() || j.size() != 2)
        fail(ErrorCode::ParseError, "product element must be a pair");
      return pair(base_->parse_element(j[0]), second_->parse_element(j[1]));
    case Kind::Quotient:
      return project(base_->parse_element(j));
    case Kind::Corner: {
      auto v = from_parent(base_->parse_element(j));
      if (!v) fail(ErrorCode::ParseError, "element " + j.dump() + " is not in the corner ring");
      return *v;
    }
    case Kind::Opposite:
      return base_->parse_element(j);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// constructors

RingPtr zmod(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidSpec, "zmod needs n >= 1");
  require_size(n, "zmod(" + std::to_string(n) + ")");
  auto r = FiniteRing::Access::make();
  auto& m = FiniteRing::Access::mut(*r);
  m.kind_ = FiniteRing::Kind::ZMod;
  m.size_ = n;
  m.zero_ = 0;
  m.one_ = static_cast<Elem>(1 % n);
  m.descriptor_ = {{"type", "zmod"}, {"n", n}};
  FiniteRing::Access::finalize(m);
  return r;
}

RingPtr make_matrix_like(const RingPtr& base, int k, bool triangular) {
  const char* name = triangular ? "triangular" : "matrix";
  if (!base) fail(ErrorCode::InvalidSpec, std::string(name) + " needs a base ring");
  if (k < 1) fail(ErrorCode::InvalidSpec, std::string(name) + " needs k >= 1");
  const std::size_t slots = triangular ? static_cast<std::size_t>(k * (k + 1) / 2)
                                       : static_cast<std::size_t>(k * k);
  const std::size_t size = checked_power(base->size(), slots, guards().carrier);
  require_size(size, std::string(name) + "(k=" + std::to_string(k) + ")");
  auto r = FiniteRing::Access::make();
  auto& m = FiniteRing::Access::mut(*r);
  m.kind_ = triangular ? FiniteRing::Kind::Triangular : FiniteRing::Kind::Matrix;
  m.size_ = size;
  m.base_ = base;
  m.dim_ = k;
  m.slots_ = slots;
  m.descriptor_ = {{"type", name}, {"base", base->descriptor()}, {"k", k}};
  std::vector<Elem> id(static_cast<std::size_t>(k * k), base->zero());
  for (int i = 0; i < k; ++i) id[i * k + i] = base->one();
  m.zero_ = 0;
  m.one_ = m.from_entries(id);
  FiniteRing::Access::finalize(m);
  return r;
}

RingPtr matrix_ring(const RingPtr& base, int k) { return make_matrix_like(base, k, false); }
RingPtr triangular_ring(const RingPtr& base, int k) { return make_matrix_like(base, k, true); }

RingPtr product_ring(const RingPtr& left, const RingPtr& right) {
  if (!left || !right) fail(ErrorCode::InvalidSpec, "product needs two rings");
  const std::size_t size = checked_power(left->size(), 1, guards().carrier) *
                           right->size();
  require_size(size, "product ring");
  auto r = FiniteRing::Access::make();
  auto& m = FiniteRing::Access::mut(*r);
  m.kind_ = FiniteRing::Kind::Product;
  m.size_ = size;
  m.base_ = left;
  m.second_ = right;
  m.descriptor_ = {{"type", "product"}, {"left", left->descriptor()}, {"right", right->descriptor()}};
  m.zero_ = m.pair(left->zero(), right->zero());
  m.one_ = m.pair(left->one(), right->one());
  FiniteRing::Access::finalize(m);
  return r;
}

RingPtr opposite_ring(const RingPtr& ring) {
  auto r = FiniteRing::Access::make();
  auto& m = FiniteRing::Access::mut(*r);
  m.kind_ = FiniteRing::Kind::Opposite;
  m.size_ = ring->size();
  m.base_ = ring;
  m.zero_ = ring->zero();
  m.one_ = ring->one();
  m.descriptor_ = {{"type", "opposite"}, {"ring", ring->descriptor()}};
  FiniteRing::Access::finalize(m);
  return r;
}

RingPtr corner_ring(const RingPtr& ring, Elem e) {
  if (!ring->valid(e) || !ring->is_idempotent(e))
    fail(ErrorCode::NotIdempotent, "corner ring needs an idempotent");
  auto r = FiniteRing::Access::make();
  auto& m = FiniteRing::Access::mut(*r);
  m.kind_ = FiniteRing::Kind::Corner;
  m.base_ = ring;
  std::vector<bool> seen(ring->size(), false);
  for (Elem x = 0; x < ring->size(); ++x) seen[ring->mul3(e, x, e)] = true;
  m.back_map_.assign(ring->size(), kNone);
  for (Elem x = 0; x < ring->size(); ++x)
    if (seen[x]) {
      m.back_map_[x] = static_cast<Elem>(m.reps_.size());
      m.reps_.push_back(x);
    }
  m.size_ = m.reps_.size();
  m.zero_ = m.back_map_[ring->zero()];
  m.one_ = m.back_map_[e];
  m.descriptor_ = {{"type", "corner"}, {"ring", ring->descriptor()}, {"idempotent", ring->describe(e)}};
  FiniteRing::Access::finalize(m);
  return r;
}

RingPtr quotient_ring(const Ideal& ideal) {
  const auto& parent = ideal.ring();
  auto r = FiniteRing::Access::make();
  auto& m = FiniteRing::Access::mut(*r);
  m.kind_ = FiniteRing::Kind::Quotient;
  m.base_ = parent;
  m.back_map_.assign(parent->size(), kNone);
  for (Elem x = 0; x < parent->size(); ++x) {
    if (m.back_map_[x] != kNone) continue;
    const auto idx = static_cast<Elem>(m.reps_.size());
    m.reps_.push_back(x);
    for (Elem i : ideal.members()) m.back_map_[parent->add(x, i)] = idx;
  }
  m.size_ = m.reps_.size();
  m.zero_ = m.back_map_[parent->zero()];
  m.one_ = m.back_map_[parent->one()];
  m.descriptor_ = {{"type", "quotient"},
                   {"ring", parent->descriptor()},
                   {"modulo", {{"generators", ideal.generators_json()}}}};
  FiniteRing::Access::finalize(m);
  return r;
}

bool same_ring(const FiniteRing& a, const FiniteRing& b) {
  return &a == &b || (a.size() == b.size() && a.descriptor() == b.descriptor());
}

std::optional<std::string> check_ring_axioms(const FiniteRing& R) {
  const auto n = static_cast<Elem>(R.size());
  for (Elem a = 0; a < n; ++a) {
    if (R.add(a, R.zero()) != a) return "additive identity fails at " + R.label(a);
    if (R.add(a, R.neg(a)) != R.zero()) return "additive inverse fails at " + R.label(a);
    if (R.mul(a, R.one()) != a || R.mul(R.one(), a) != a)
      return "multiplicative identity fails at " + R.label(a);
    for (Elem b = 0; b < n; ++b) {
      if (R.add(a, b) != R.add(b, a)) return "addition not commutative";
      for (Elem c = 0; c < n; ++c) {
        if (R.add(R.add(a, b), c) != R.add(a, R.add(b, c))) return "addition not associative";
        if (R.mul(R.mul(a, b), c) != R.mul(a, R.mul(b, c))) return "multiplication not associative";
        if (R.mul(a, R.add(b, c)) != R.add(R.mul(a, b), R.mul(a, c))) return "left distributivity fails";
        if (R.mul(R.add(a, b), c) != R.add(R.mul(a, c), R.mul(b, c))) return "right distributivity fails";
      }
    }
  }
  return std::nullopt;
}

std::vector<Elem> right_multiples(const FiniteRing& R, Elem a) {
  std::vector<bool> seen(R.size(), false);
  for (Elem x = 0; x < R.size(); ++x) seen[R.mul(a, x)] = true;
  std::vector<Elem> out;
  for (Elem x = 0; x < R.size(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

std::vector<Elem> left_multiples(const FiniteRing& R, Elem a) {
  std::vector<bool> seen(R.size(), false);
  for (Elem x = 0; x < R.size(); ++x) seen[R.mul(x, a)] = true;
  std::vector<Elem> out;
  for (Elem x = 0; x < R.size(); ++x)
    if (seen[x]) out.push_back(x);
  return out;
}

std::optional<Elem> regular_witness(const FiniteRing& R, Elem x) {
  for (Elem y = 0; y < R.size(); ++y)
    if (R.mul3(x, y, x) == x) return y;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// ideals

namespace {

std::vector<bool> close_two_sided(const FiniteRing& R, std::span<const Elem> gens) {
  std::vector<bool> in(R.size(), false);
  std::vector<Elem> members;
  std::deque<Elem> work;
  auto push = [&](Elem x) {
    if (!in[x]) {
      in[x] = true;
      members.push_back(x);
      work.push_back(x);
    }
  };
  push(R.zero());
  for (Elem g : gens) {
    if (!R.valid(g)) fail(ErrorCode::InvalidSpec, "ideal generator out of range");
    push(g);
  }
  while (!work.empty()) {
    Elem x = work.front();
    work.pop_front();
    for (Elem r = 0; r < R.size(); ++r) {
      push(R.mul(r, x));
      push(R.mul(x, r));
    }
    for (std::size_t i = 0; i < members.size(); ++i) push(R.add(x, members[i]));
  }
  return in;
}

}  // namespace

Ideal Ideal::closure(const RingPtr& ring, std::span<const Elem> generators) {
  Ideal I;
  I.ring_ = ring;
  I.mask_ = close_two_sided(*ring, generators);
  for (Elem x = 0; x < ring->size(); ++x)
    if (I.mask_[x]) I.members_.push_back(x);
  I.generators_.assign(generators.begin(), generators.end());
  return I;
}

Ideal Ideal::from_members(const RingPtr& ring, std::vector<Elem> members,
                          std::vector<Elem> generators) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (generators.empty()) {
    // Greedy: keep each member not already generated by the earlier picks.
    std::vector<bool> have = close_two_sided(*ring, generators);
    for (Elem m : members) {
      if (have[m]) continue;
      generators.push_back(m);
      have = close_two_sided(*ring, generators);
    }
  }
  Ideal I = closure(ring, generators);
  if (I.members_ != members)
    fail(ErrorCode::InvalidSpec, "member set is not the two-sided ideal of its generators");
  return I;
}

Ideal Ideal::zero(const RingPtr& ring) { return closure(ring, {}); }

Ideal Ideal::whole(const RingPtr& ring) {
  const Elem one = ring->one();
  return closure(ring, std::span<const Elem>(&one, 1));
}

Ideal Ideal::rebind(const RingPtr& ring) const {
  if (ring->size() != ring_->size()) fail(ErrorCode::RingMismatch, "rebind needs the same carrier");
  Ideal I = *this;
  I.ring_ = ring;
  return I;
}

json Ideal::generators_json() const {
  json out = json::array();
  for (Elem g : generators_) out.push_back(ring_->describe(g));
  return out;
}

Ideal principal_ideal(const RingPtr& ring, Elem a) {
  return Ideal::closure(ring, std::span<const Elem>(&a, 1));
}

}  // namespace exlift
