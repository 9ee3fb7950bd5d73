#include "exlift/vmonoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_set>

#include "exlift/error.hpp"

namespace exlift {

namespace {

// decomp[x] lists every (a, b) in the ball with a + b == x, ordered by (a, b).
std::vector<std::vector<std::pair<MElem, MElem>>> decompositions(const FinMonoid& m) {
  std::vector<std::vector<std::pair<MElem, MElem>>> d(m.size);
  for (MElem a = 0; a < m.size; ++a) {
    if (!m.in_ball(a)) continue;
    for (MElem b = 0; b < m.size; ++b) {
      if (!m.in_ball(b)) continue;
      MElem s = m.op(a, b);
      if (m.in_ball(s)) d[s].emplace_back(a, b);
    }
  }
  return d;
}

bool refines_with(const FinMonoid& m, const std::vector<std::vector<std::pair<MElem, MElem>>>& d,
                  const Quad& q) {
  for (auto [z11, z12] : d[q[0]])
    for (auto [z21, z22] : d[q[1]])
      if (m.op(z11, z21) == q[2] && m.op(z12, z22) == q[3]) return true;
  return false;
}

}  // namespace

std::string FinMonoid::label(MElem a) const {
  if (a < labels.size()) return labels[a];
  return std::to_string(a);
}

bool FinMonoid::leq(MElem a, MElem b) const {
  for (MElem z = 0; z < size; ++z)
    if (op(a, z) == b) return true;
  return false;
}

MElem FinMonoid::times(std::uint64_t n, MElem a) const {
  MElem acc = zero;
  for (std::uint64_t i = 0; i < n; ++i) acc = op(acc, a);
  return acc;
}

std::optional<std::string> FinMonoid::check_axioms() const {
  if (size == 0) return "empty monoid";
  if (table.size() != size * size) return "table has " + std::to_string(table.size()) + " entries";
  for (MElem t : table)
    if (t >= size) return "table entry " + std::to_string(t) + " out of range";
  if (zero >= size) return "zero index out of range";
  if (overflow && *overflow >= size) return "overflow index out of range";
  for (MElem a = 0; a < size; ++a) {
    if (op(zero, a) != a) return "identity law fails at " + label(a);
    if (overflow && op(*overflow, a) != *overflow) return "overflow element is not absorbing";
    for (MElem b = 0; b < size; ++b) {
      if (op(a, b) != op(b, a)) return "not commutative at " + label(a) + ", " + label(b);
      for (MElem c = 0; c < size; ++c)
        if (op(op(a, b), c) != op(a, op(b, c)))
          return "not associative at " + label(a) + ", " + label(b) + ", " + label(c);
    }
  }
  return std::nullopt;
}

std::vector<MElem> OrderIdeal::members() const {
  std::vector<MElem> out;
  for (MElem a = 0; a < mask.size(); ++a)
    if (mask[a]) out.push_back(a);
  return out;
}

OrderIdeal OrderIdeal::whole(const FinMonoid& m) {
  OrderIdeal s{std::vector<bool>(m.size, true)};
  if (m.overflow) s.mask[*m.overflow] = false;
  return s;
}

OrderIdeal OrderIdeal::trivial(const FinMonoid& m) { return of(m, {m.zero}); }

OrderIdeal OrderIdeal::of(const FinMonoid& m, const std::vector<MElem>& members) {
  OrderIdeal s{std::vector<bool>(m.size, false)};
  for (MElem a : members) {
    if (a >= m.size) fail(ErrorCode::InvalidSpec, "order-ideal member " + std::to_string(a) + " out of range");
    s.mask[a] = true;
  }
  return s;
}

std::optional<std::string> order_ideal_violation(const FinMonoid& m, const OrderIdeal& s) {
  if (s.mask.size() != m.size) return "mask size differs from monoid size";
  if (!s.contains(m.zero)) return "zero is missing";
  if (m.overflow && s.contains(*m.overflow)) return "overflow element is a member";
  for (MElem a = 0; a < m.size; ++a) {
    if (!s.contains(a)) continue;
    for (MElem b = 0; b < m.size; ++b) {
      MElem c = m.op(a, b);
      if (s.contains(b) && m.in_ball(c) && !s.contains(c))
        return m.label(a) + " + " + m.label(b) + " leaves the set";
      if (m.in_ball(b) && !s.contains(b) && m.leq(b, a))
        return m.label(b) + " <= " + m.label(a) + " but is not a member";
    }
  }
  return std::nullopt;
}

OrderIdeal order_ideal_closure(const FinMonoid& m, const std::vector<MElem>& seeds) {
  OrderIdeal s = OrderIdeal::of(m, seeds);
  s.mask[m.zero] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (MElem a = 0; a < m.size; ++a) {
      if (!s.mask[a]) continue;
      for (MElem b = 0; b < m.size; ++b) {
        if (!m.in_ball(b)) continue;
        MElem c = m.op(a, b);
        if (s.mask[b] && m.in_ball(c) && !s.mask[c]) s.mask[c] = changed = true;
        if (m.in_ball(c) && s.mask[c] && !s.mask[b]) s.mask[b] = changed = true;
        if (!s.mask[b] && m.leq(b, a)) s.mask[b] = changed = true;
      }
    }
  }
  if (m.overflow) s.mask[*m.overflow] = false;
  return s;
}

bool refines(const FinMonoid& m, const Quad& q) {
  for (MElem z11 = 0; z11 < m.size; ++z11)
    for (MElem z12 = 0; z12 < m.size; ++z12) {
      if (!m.in_ball(z11) || !m.in_ball(z12) || m.op(z11, z12) != q[0]) continue;
      for (MElem z21 = 0; z21 < m.size; ++z21) {
        if (!m.in_ball(z21) || m.op(z11, z21) != q[2]) continue;
        for (MElem z22 = 0; z22 < m.size; ++z22)
          if (m.in_ball(z22) && m.op(z21, z22) == q[1] && m.op(z12, z22) == q[3]) return true;
      }
    }
  return false;
}

std::optional<Quad> refinement_counterexample(const FinMonoid& m, const OrderIdeal& s) {
  const auto d = decompositions(m);
  for (MElem x1 = 0; x1 < m.size; ++x1)
    for (MElem x2 = 0; x2 < m.size; ++x2) {
      if (!m.in_ball(x1) || !m.in_ball(x2)) continue;
      MElem sum = m.op(x1, x2);
      if (!m.in_ball(sum)) continue;
      for (auto [y1, y2] : d[sum]) {
        if (!s.contains(x1) && !s.contains(x2) && !s.contains(y1) && !s.contains(y2)) continue;
        Quad q{x1, x2, y1, y2};
        if (!refines_with(m, d, q)) return q;
      }
    }
  return std::nullopt;
}

std::optional<std::pair<MElem, MElem>> separativity_counterexample(const FinMonoid& m, const OrderIdeal* s) {
  for (MElem a = 0; a < m.size; ++a)
    for (MElem b = a + 1; b < m.size; ++b) {
      if (!m.in_ball(a) || !m.in_ball(b)) continue;
      if (s && (!s->contains(a) || !s->contains(b))) continue;
      MElem aa = m.op(a, a);
      if (m.in_ball(aa) && aa == m.op(a, b) && aa == m.op(b, b)) return std::pair{a, b};
    }
  return std::nullopt;
}

std::optional<CancellationCounterexample> cancellation_counterexample(const FinMonoid& m, const OrderIdeal& s) {
  if (auto why = order_ideal_violation(m, s)) fail(ErrorCode::HypothesisFailed, "not an order-ideal: " + *why);
  if (auto p = separativity_counterexample(m, &s))
    fail(ErrorCode::HypothesisFailed,
         "order-ideal is not separative at (" + m.label(p->first) + ", " + m.label(p->second) + ")");
  if (auto q = refinement_counterexample(m, s))
    fail(ErrorCode::HypothesisFailed, "no refinement for " + m.label((*q)[0]) + " + " + m.label((*q)[1]) +
                                          " = " + m.label((*q)[2]) + " + " + m.label((*q)[3]));

  const std::size_t n = m.size;
  std::vector<bool> leq(n * n, false);
  for (MElem a = 0; a < n; ++a)
    for (MElem z = 0; z < n; ++z) leq[a * n + m.op(a, z)] = true;
  // multiples[k-1][a] = k*a
  std::vector<std::vector<MElem>> multiples(n, std::vector<MElem>(n));
  for (MElem a = 0; a < n; ++a) {
    MElem acc = a;
    for (std::size_t k = 0; k < n; ++k) {
      multiples[k][a] = acc;
      acc = m.op(acc, a);
    }
  }

  for (MElem e = 0; e < n; ++e) {
    if (!s.contains(e)) continue;
    for (MElem a = 0; a < n; ++a)
      for (MElem b = a + 1; b < n; ++b) {
        if (!m.in_ball(a) || !m.in_ball(b)) continue;
        MElem ae = m.op(a, e);
        if (!m.in_ball(ae) || ae != m.op(b, e)) continue;
        for (std::size_t k = 0; k < n; ++k) {
          MElem na = multiples[k][a], nb = multiples[k][b];
          if (m.in_ball(na) && m.in_ball(nb) && leq[e * n + na] && leq[e * n + nb])
            return CancellationCounterexample{a, b, e, k + 1};
        }
      }
  }
  return std::nullopt;
}

json monoid_to_json(const FinMonoid& m, const OrderIdeal* s) {
  json j = {{"type", "monoid"}, {"size", m.size}, {"zero", m.zero}, {"table", m.table}};
  if (m.overflow) j["overflow"] = *m.overflow;
  if (!m.labels.empty()) j["labels"] = m.labels;
  if (s) j["order_ideal"] = s->members();
  return j;
}

std::pair<FinMonoid, OrderIdeal> monoid_from_json(const json& j) {
  try {
    if (!j.is_object() || j.value("type", "") != "monoid") fail(ErrorCode::InvalidSpec, "expected a monoid object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      static const std::set<std::string> known = {"type", "size", "zero", "table", "overflow", "labels", "order_ideal"};
      if (!known.count(it.key())) fail(ErrorCode::InvalidSpec, "unknown monoid field '" + it.key() + "'");
    }
    FinMonoid m;
    m.size = j.at("size").get<std::size_t>();
    m.zero = j.at("zero").get<MElem>();
    m.table = j.at("table").get<std::vector<MElem>>();
    if (j.contains("overflow")) m.overflow = j["overflow"].get<MElem>();
    if (j.contains("labels")) m.labels = j["labels"].get<std::vector<std::string>>();
    if (auto why = m.check_axioms()) fail(ErrorCode::InvalidSpec, "monoid: " + *why);
    OrderIdeal s = j.contains("order_ideal") ? OrderIdeal::of(m, j["order_ideal"].get<std::vector<MElem>>())
                                             : OrderIdeal::whole(m);
    return {std::move(m), std::move(s)};
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("monoid: ") + e.what());
  }
}

namespace {

struct Component {
  std::size_t size;
  std::vector<MElem> table;
  std::string name;
};

Component cyclic(std::size_t n) {
  Component c{n, std::vector<MElem>(n * n), "Z" + std::to_string(n)};
  for (MElem a = 0; a < n; ++a)
    for (MElem b = 0; b < n; ++b) c.table[a * n + b] = static_cast<MElem>((a + b) % n);
  return c;
}

Component chain(std::size_t top) {
  const std::size_t n = top + 1;
  Component c{n, std::vector<MElem>(n * n), "N" + std::to_string(top)};
  for (MElem a = 0; a < n; ++a)
    for (MElem b = 0; b < n; ++b) c.table[a * n + b] = static_cast<MElem>(std::min<std::size_t>(a + b, top));
  return c;
}

// {0, a, c, s}: every sum of two nonzero elements is s.
Component collapse() {
  Component c{4, std::vector<MElem>(16, 3), "C"};
  for (MElem a = 0; a < 4; ++a) c.table[a] = c.table[a * 4] = a;
  return c;
}

}  // namespace

std::pair<FinMonoid, OrderIdeal> random_monoid(std::mt19937_64& rng, std::size_t max_size) {
  std::vector<Component> parts;
  std::size_t size = 1;
  const int want = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int tries = 0; static_cast<int>(parts.size()) < want && tries < 20; ++tries) {
    Component c = [&] {
      switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
        case 0: return cyclic(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
        case 1: return chain(1);
        case 2:
        case 3: return chain(std::uniform_int_distribution<std::size_t>(2, 4)(rng));
        case 4: return cyclic(2);
        default: return collapse();
      }
    }();
    if (size * c.size > max_size) continue;
    size *= c.size;
    parts.push_back(std::move(c));
  }

  FinMonoid m;
  m.size = size;
  m.zero = 0;
  m.table.assign(size * size, 0);
  std::vector<std::vector<MElem>> digits(size);
  for (MElem x = 0; x < size; ++x) {
    MElem rest = x;
    for (const auto& c : parts) {
      digits[x].push_back(static_cast<MElem>(rest % c.size));
      rest /= static_cast<MElem>(c.size);
    }
  }
  for (MElem a = 0; a < size; ++a)
    for (MElem b = 0; b < size; ++b) {
      MElem code = 0, radix = 1;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        code += radix * parts[i].table[digits[a][i] * parts[i].size + digits[b][i]];
        radix *= static_cast<MElem>(parts[i].size);
      }
      m.table[a * size + b] = code;
    }
  for (MElem x = 0; x < size; ++x) {
    std::string l;
    for (std::size_t i = 0; i < parts.size(); ++i) l += (i ? "," : "") + std::to_string(digits[x][i]);
    m.labels.push_back("(" + l + ")");
  }

  std::vector<MElem> seeds;
  const int nseeds = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < nseeds; ++i)
    seeds.push_back(std::uniform_int_distribution<MElem>(0, static_cast<MElem>(size - 1))(rng));
  return {m, order_ideal_closure(m, seeds)};
}

// ---------------------------------------------------------------------------
// V(R)

std::vector<bool> jacobson_radical(const FiniteRing& R) {
  std::vector<bool> J(R.size(), true);
  for (Elem x = 0; x < R.size(); ++x)
    for (Elem r = 0; r < R.size() && J[x]; ++r)
      if (!R.is_unit(R.sub(R.one(), R.mul(r, x)))) J[x] = false;
  return J;
}

std::vector<Elem> primitive_decomposition(const FiniteRing& R, Elem e) {
  if (!R.is_idempotent(e)) fail(ErrorCode::NotIdempotent, R.label(e) + " is not idempotent");
  if (e == R.zero()) return {};
  std::optional<Elem> split;
  for (Elem x = 0; x < R.size(); ++x) {
    Elem c = R.mul3(e, x, e);
    if (c != R.zero() && c != e && R.is_idempotent(c) && (!split || c < *split)) split = c;
  }
  if (!split) return {e};
  auto out = primitive_decomposition(R, *split);
  auto rest = primitive_decomposition(R, R.sub(e, *split));
  out.insert(out.end(), rest.begin(), rest.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool equivalent_idempotents(const FiniteRing& R, Elem e, Elem f) {
  std::set<Elem> xs, ys;
  for (Elem r = 0; r < R.size(); ++r) {
    xs.insert(R.mul3(e, r, f));
    ys.insert(R.mul3(f, r, e));
  }
  for (Elem x : xs)
    for (Elem y : ys)
      if (R.mul(x, y) == e && R.mul(y, x) == f) return true;
  return false;
}

MElem VMonoid::index_of(const std::vector<int>& counts) const {
  MElem code = 0, radix = 1;
  for (std::size_t i = 0; i < types.size(); ++i) {
    const int bound = truncation * static_cast<int>(types[i].copies.size());
    if (counts[i] < 0 || counts[i] > bound) return *monoid.overflow;
    code += radix * static_cast<MElem>(counts[i]);
    radix *= static_cast<MElem>(bound + 1);
  }
  return code;
}

VMonoid build_v_monoid(const RingPtr& ring, int K) {
  if (K < 1) fail(ErrorCode::PreconditionFailed, "truncation must be at least 1");
  const auto& R = *ring;
  VMonoid v;
  v.ring = ring;
  v.truncation = K;
  v.radical = jacobson_radical(R);

  for (Elem p : primitive_decomposition(R, R.one())) {
    auto it = std::find_if(v.types.begin(), v.types.end(),
                           [&](const PrimitiveType& t) { return equivalent_idempotents(R, t.idempotent, p); });
    if (it == v.types.end()) {
      v.types.push_back({p, {p}, 0});
    } else {
      it->copies.push_back(p);
    }
  }
  for (auto& t : v.types) {
    std::set<Elem> corner, rad;
    for (Elem r = 0; r < R.size(); ++r) {
      corner.insert(R.mul3(t.idempotent, r, t.idempotent));
      if (v.radical[r]) rad.insert(R.mul3(t.idempotent, r, t.idempotent));
    }
    t.residue = corner.size() / rad.size();
  }

  std::size_t ball = 1;
  std::vector<int> bounds;
  for (const auto& t : v.types) {
    bounds.push_back(K * static_cast<int>(t.copies.size()));
    ball *= static_cast<std::size_t>(bounds.back() + 1);
    if (ball > 4096) fail(ErrorCode::GuardExceeded, "truncated V-monoid has more than 4096 classes");
  }
  const std::size_t size = ball + 1;
  FinMonoid& m = v.monoid;
  m.size = size;
  m.zero = 0;
  m.overflow = static_cast<MElem>(ball);
  m.table.assign(size * size, *m.overflow);

  std::vector<std::vector<int>> counts(ball, std::vector<int>(v.types.size()));
  for (MElem x = 0; x < ball; ++x) {
    MElem rest = x;
    for (std::size_t i = 0; i < v.types.size(); ++i) {
      counts[x][i] = static_cast<int>(rest % static_cast<MElem>(bounds[i] + 1));
      rest /= static_cast<MElem>(bounds[i] + 1);
    }
  }
  for (MElem a = 0; a < ball; ++a)
    for (MElem b = 0; b < ball; ++b) {
      std::vector<int> sum(v.types.size());
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = counts[a][i] + counts[b][i];
      m.table[a * size + b] = v.index_of(sum);
    }

  for (MElem x = 0; x < ball; ++x) {
    std::string l;
    int k = 1;
    for (std::size_t i = 0; i < v.types.size(); ++i) {
      l += (i ? "," : "") + std::to_string(counts[x][i]);
      const int mult = static_cast<int>(v.types[i].copies.size());
      k = std::max(k, (counts[x][i] + mult - 1) / mult);
    }
    m.labels.push_back("(" + l + ")");

    std::vector<Elem> diag(static_cast<std::size_t>(k), R.zero());
    for (std::size_t i = 0; i < v.types.size(); ++i) {
      const int mult = static_cast<int>(v.types[i].copies.size());
      for (int slot = 0; slot < k; ++slot) {
        const int c = std::clamp(counts[x][i] - slot * mult, 0, mult);
        for (int j = 0; j < c; ++j) diag[static_cast<std::size_t>(slot)] = R.add(diag[static_cast<std::size_t>(slot)], v.types[i].copies[static_cast<std::size_t>(j)]);
      }
    }
    v.classes.push_back({RMatrix::diag(ring, diag), x, counts[x]});
  }
  m.labels.push_back("overflow");
  return v;
}

namespace {

// Additive subgroup of R^k generated by vectors, stored by mixed-radix code.
class Subgroup {
 public:
  Subgroup(const FiniteRing& R, int k) : R_(R), k_(k) { insert(std::vector<Elem>(static_cast<std::size_t>(k), R.zero())); }

  void add_generator(const std::vector<Elem>& g) {
    if (codes_.count(code(g))) return;
    const std::size_t base = vectors_.size() / static_cast<std::size_t>(k_);
    std::vector<Elem> mult = g;
    while (!codes_.count(code(mult))) {
      for (std::size_t h = 0; h < base; ++h) {
        std::vector<Elem> sum(mult);
        for (int i = 0; i < k_; ++i) sum[static_cast<std::size_t>(i)] = R_.add(sum[static_cast<std::size_t>(i)], vectors_[h * static_cast<std::size_t>(k_) + static_cast<std::size_t>(i)]);
        insert(sum);
      }
      for (int i = 0; i < k_; ++i) mult[static_cast<std::size_t>(i)] = R_.add(mult[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(i)]);
      if (codes_.size() > guards().search) fail(ErrorCode::GuardExceeded, "submodule enumeration");
    }
  }

  std::size_t size() const { return codes_.size(); }

 private:
  std::uint64_t code(const std::vector<Elem>& v) const {
    std::uint64_t c = 0;
    for (Elem x : v) c = c * R_.size() + x;
    return c;
  }
  void insert(const std::vector<Elem>& v) {
    if (codes_.insert(code(v)).second) vectors_.insert(vectors_.end(), v.begin(), v.end());
  }

  const FiniteRing& R_;
  int k_;
  std::unordered_set<std::uint64_t> codes_;
  std::vector<Elem> vectors_;
};

std::size_t image_size(const RMatrix& e, const std::vector<Elem>& gens) {
  const auto& R = e.R();
  const int k = e.n();
  Subgroup h(R, k);
  for (int l = 0; l < k; ++l)
    for (Elem g : gens) {
      std::vector<Elem> col(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) col[static_cast<std::size_t>(i)] = R.mul(e(i, l), g);
      h.add_generator(col);
    }
  return h.size();
}

}  // namespace

std::vector<int> class_counts(const VMonoid& v, const RMatrix& e) {
  if (!same_ring(e.R(), *v.ring)) fail(ErrorCode::RingMismatch, "idempotent lives over another ring");
  if (!e.is_idempotent()) fail(ErrorCode::NotIdempotent, "matrix is not idempotent");
  const auto& R = *v.ring;
  std::vector<int> out;
  for (const auto& t : v.types) {
    std::set<Elem> rp, jp;
    for (Elem r = 0; r < R.size(); ++r) {
      rp.insert(R.mul(r, t.idempotent));
      if (v.radical[r]) jp.insert(R.mul(r, t.idempotent));
    }
    const std::size_t top = image_size(e, {rp.begin(), rp.end()});
    const std::size_t bottom = image_size(e, {jp.begin(), jp.end()});
    std::size_t ratio = top / bottom, power = 1;
    int n = 0;
    while (power < ratio) {
      power *= t.residue;
      ++n;
    }
    if (power != ratio || top % bottom != 0)
      fail(ErrorCode::VerificationFailed, "module length is not a power of the residue size");
    out.push_back(n);
  }
  return out;
}

OrderIdeal v_order_ideal(const VMonoid& v, const Ideal& I) {
  if (!same_ring(*I.ring(), *v.ring)) fail(ErrorCode::RingMismatch, "ideal lives over another ring");
  OrderIdeal s{std::vector<bool>(v.monoid.size, false)};
  for (const auto& c : v.classes) s.mask[c.monoid_index] = c.representative.entries_in(I);
  if (auto why = order_ideal_violation(v.monoid, s))
    fail(ErrorCode::NotDownwardClosed, "V(I) at truncation " + std::to_string(v.truncation) + ": " + *why);
  return s;
}

namespace {

template <class F>
void for_each_matrix(const RingPtr& ring, int k, F&& f) {
  const std::size_t slots = static_cast<std::size_t>(k * k);
  std::size_t total = 1;
  for (std::size_t i = 0; i < slots; ++i) {
    total *= ring->size();
    if (total > guards().search) fail(ErrorCode::GuardExceeded, "matrix enumeration over M_" + std::to_string(k));
  }
  RMatrix a(ring, k);
  std::vector<Elem> digits(slots, 0);
  for (std::size_t step = 0; step < total; ++step) {
    for (std::size_t i = 0; i < slots; ++i) a(static_cast<int>(i) / k, static_cast<int>(i) % k) = digits[i];
    f(a);
    for (std::size_t i = 0; i < slots; ++i) {
      if (++digits[i] < ring->size()) break;
      digits[i] = 0;
    }
  }
}

RMatrix pad(const RMatrix& a, int n) {
  return a.n() == n ? a : direct_sum(a, RMatrix(a.ring(), n - a.n()));
}

}  // namespace

std::vector<RMatrix> idempotent_matrices(const RingPtr& ring, int k) {
  std::vector<RMatrix> out;
  for_each_matrix(ring, k, [&](const RMatrix& a) {
    if (a.is_idempotent()) out.push_back(a);
  });
  return out;
}

bool equivalent_idempotent_matrices(const RMatrix& e0, const RMatrix& f0) {
  const int n = std::max(e0.n(), f0.n());
  const RMatrix e = pad(e0, n), f = pad(f0, n);
  std::set<std::vector<Elem>> xs, ys;
  for_each_matrix(e.ring(), n, [&](const RMatrix& a) {
    auto x = e * a * f, y = f * a * e;
    xs.insert({x.entries().begin(), x.entries().end()});
    ys.insert({y.entries().begin(), y.entries().end()});
  });
  auto as_matrix = [&](const std::vector<Elem>& v) {
    RMatrix m(e.ring(), n);
    for (int i = 0; i < n * n; ++i) m(i / n, i % n) = v[static_cast<std::size_t>(i)];
    return m;
  };
  std::vector<RMatrix> X, Y;
  for (const auto& v : xs) X.push_back(as_matrix(v));
  for (const auto& v : ys) Y.push_back(as_matrix(v));
  for (const auto& x : X)
    for (const auto& y : Y)
      if (x * y == e && y * x == f) return true;
  return false;
}

}  // namespace exlift
