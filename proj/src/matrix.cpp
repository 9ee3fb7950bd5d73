#include "exlift/matrix.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>

#include "exlift/error.hpp"

namespace exlift {

namespace {

void require_same(const RMatrix& a, const RMatrix& b) {
  if (a.n() != b.n())
    fail(ErrorCode::DimensionMismatch,
         std::to_string(a.n()) + "x" + std::to_string(a.n()) + " vs " + std::to_string(b.n()) + "x" +
             std::to_string(b.n()));
  if (!same_ring(a.R(), b.R())) fail(ErrorCode::RingMismatch, "matrices over different rings");
}

}  // namespace

RMatrix::RMatrix(RingPtr ring, int n)
    : ring_(std::move(ring)), n_(n), entries_(static_cast<std::size_t>(n * n), 0) {
  if (n < 1) fail(ErrorCode::DimensionMismatch, "matrix dimension must be >= 1");
  std::fill(entries_.begin(), entries_.end(), ring_->zero());
}

RMatrix RMatrix::identity(const RingPtr& ring, int n) {
  RMatrix m(ring, n);
  for (int i = 0; i < n; ++i) m(i, i) = ring->one();
  return m;
}

RMatrix RMatrix::from_rows(const RingPtr& ring,
                           std::initializer_list<std::initializer_list<Elem>> rows) {
  const int n = static_cast<int>(rows.size());
  RMatrix m(ring, n);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) fail(ErrorCode::DimensionMismatch, "ragged matrix rows");
    int j = 0;
    for (Elem x : row) {
      if (!ring->valid(x)) fail(ErrorCode::InvalidSpec, "matrix entry out of range");
      m(i, j++) = x;
    }
    ++i;
  }
  return m;
}

RMatrix RMatrix::diag(const RingPtr& ring, std::span<const Elem> d) {
  RMatrix m(ring, static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return m;
}

RMatrix RMatrix::unit_entry(const RingPtr& ring, int n, int i, int j, Elem r) {
  RMatrix m(ring, n);
  m(i, j) = r;
  return m;
}

RMatrix RMatrix::elementary(const RingPtr& ring, int n, int i, int j, Elem r) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    fail(ErrorCode::DimensionMismatch, "elementary matrix needs distinct indices in range");
  RMatrix m = identity(ring, n);
  m(i, j) = r;
  return m;
}

bool RMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [&](Elem x) { return x == ring_->zero(); });
}

bool RMatrix::is_identity() const { return *this == identity(ring_, n_); }

bool RMatrix::is_idempotent() const { return *this * *this == *this; }

bool RMatrix::entries_in(const Ideal& ideal) const {
  return std::all_of(entries_.begin(), entries_.end(), [&](Elem x) { return ideal.contains(x); });
}

json RMatrix::to_json() const {
  json rows = json::array();
  for (int i = 0; i < n_; ++i) {
    json row = json::array();
    for (int j = 0; j < n_; ++j) row.push_back(ring_->describe((*this)(i, j)));
    rows.push_back(row);
  }
  return rows;
}

RMatrix RMatrix::from_json(const RingPtr& ring, const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::ParseError, "matrix must be a non-empty list of rows");
  const int n = static_cast<int>(j.size());
  RMatrix m(ring, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(ErrorCode::ParseError, "matrix rows must have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(i, c) = ring->parse_element(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

bool operator==(const RMatrix& a, const RMatrix& b) {
  return a.n_ == b.n_ && a.entries_ == b.entries_ && same_ring(*a.ring_, *b.ring_);
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  require_same(a, b);
  const auto& R = a.R();
  const int n = a.n();
  RMatrix c(a.ring(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Elem acc = R.zero();
      for (int l = 0; l < n; ++l) acc = R.add(acc, R.mul(a(i, l), b(l, j)));
      c(i, j) = acc;
    }
  return c;
}

RMatrix operator+(const RMatrix& a, const RMatrix& b) {
  require_same(a, b);
  RMatrix c(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) c(i, j) = a.R().add(a(i, j), b(i, j));
  return c;
}

RMatrix operator-(const RMatrix& a, const RMatrix& b) {
  require_same(a, b);
  RMatrix c(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) c(i, j) = a.R().sub(a(i, j), b(i, j));
  return c;
}

RMatrix operator-(const RMatrix& a) {
  return map_entries(a, a.ring(), [&](Elem x) { return a.R().neg(x); });
}

RMatrix scale_left(Elem r, const RMatrix& a) {
  return map_entries(a, a.ring(), [&](Elem x) { return a.R().mul(r, x); });
}

RMatrix scale_right(const RMatrix& a, Elem r) {
  return map_entries(a, a.ring(), [&](Elem x) { return a.R().mul(x, r); });
}

RMatrix direct_sum(const RMatrix& x, const RMatrix& y) {
  if (!same_ring(x.R(), y.R())) fail(ErrorCode::RingMismatch, "direct sum over different rings");
  RMatrix m(x.ring(), x.n() + y.n());
  for (int i = 0; i < x.n(); ++i)
    for (int j = 0; j < x.n(); ++j) m(i, j) = x(i, j);
  for (int i = 0; i < y.n(); ++i)
    for (int j = 0; j < y.n(); ++j) m(x.n() + i, x.n() + j) = y(i, j);
  return m;
}

RMatrix transpose(const RMatrix& a) {
  RMatrix t(a.ring(), a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) t(j, i) = a(i, j);
  return t;
}

RMatrix rebind(const RMatrix& a, const RingPtr& ring) {
  if (ring->size() != a.R().size()) fail(ErrorCode::RingMismatch, "rebind needs the same carrier");
  RMatrix m(ring, a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) m(i, j) = a(i, j);
  return m;
}

RMatrix map_entries(const RMatrix& a, const RingPtr& target, const std::function<Elem(Elem)>& f) {
  RMatrix m(target, a.n());
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j) m(i, j) = f(a(i, j));
  return m;
}

RMatrix project(const RMatrix& a, const RingPtr& quotient) {
  if (quotient->kind() != FiniteRing::Kind::Quotient || !same_ring(*quotient->base(), a.R()))
    fail(ErrorCode::RingMismatch, "projection target is not a quotient of the matrix ring");
  return map_entries(a, quotient, [&](Elem x) { return quotient->project(x); });
}

std::optional<RMatrix> try_inverse(const RMatrix& a) {
  const auto& R = a.R();
  const int n = a.n();
  if (n == 1) {
    auto inv = R.inverse(a(0, 0));
    if (!inv) return std::nullopt;
    return RMatrix::scalar(a.ring(), *inv);
  }
  std::size_t total = 1;
  for (int l = 0; l < n; ++l) {
    if (total > guards().search / R.size())
      fail(ErrorCode::GuardExceeded, "inverse search over |R|^n columns exceeds the search guard");
    total *= R.size();
  }
  // cand[j] = columns c with A*c = e_j.
  std::vector<std::vector<std::vector<Elem>>> cand(static_cast<std::size_t>(n));
  std::vector<Elem> c(static_cast<std::size_t>(n), 0), image(static_cast<std::size_t>(n));
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t x = code;
    for (int l = 0; l < n; ++l) {
      c[l] = static_cast<Elem>(x % R.size());
      x /= R.size();
    }
    int hits = 0, where = -1;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      Elem acc = R.zero();
      for (int l = 0; l < n; ++l) acc = R.add(acc, R.mul(a(i, l), c[l]));
      if (acc == R.one() && R.one() != R.zero()) {
        ++hits;
        where = i;
      } else if (acc != R.zero()) {
        ok = false;
      }
    }
    if (R.one() == R.zero()) {
      for (auto& list : cand) list.push_back(c);
      continue;
    }
    if (ok && hits == 1) cand[static_cast<std::size_t>(where)].push_back(c);
  }
  for (const auto& list : cand)
    if (list.empty()) return std::nullopt;
  // Combine column choices; for finite rings a right inverse is two-sided, but
  // we still check X*A = 1.
  std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
  std::size_t tried = 0;
  const RMatrix id = RMatrix::identity(a.ring(), n);
  while (true) {
    RMatrix x(a.ring(), n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) x(i, j) = cand[j][pick[j]][i];
    if (x * a == id && a * x == id) return x;
    if (++tried > guards().search) fail(ErrorCode::GuardExceeded, "inverse combination search");
    int l = 0;
    while (l < n && ++pick[l] == cand[l].size()) pick[l++] = 0;
    if (l == n) return std::nullopt;
  }
}

RMatrix to_blocks(const RMatrix& big, const RingPtr& block_ring) {
  if (block_ring->kind() != FiniteRing::Kind::Matrix || !same_ring(*block_ring->base(), big.R()))
    fail(ErrorCode::RingMismatch, "block ring must be a matrix ring over the entry ring");
  const int k = block_ring->dim();
  if (big.n() % k != 0) fail(ErrorCode::DimensionMismatch, "block size does not divide dimension");
  const int m = big.n() / k;
  RMatrix out(block_ring, m);
  std::vector<Elem> e(static_cast<std::size_t>(k * k));
  for (int bi = 0; bi < m; ++bi)
    for (int bj = 0; bj < m; ++bj) {
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) e[i * k + j] = big(bi * k + i, bj * k + j);
      out(bi, bj) = block_ring->from_entries(e);
    }
  return out;
}

RMatrix from_blocks(const RMatrix& blocks) {
  const auto& S = blocks.R();
  if (S.kind() != FiniteRing::Kind::Matrix) fail(ErrorCode::RingMismatch, "from_blocks needs a matrix ring");
  const int k = S.dim();
  const int m = blocks.n();
  RMatrix out(S.base(), m * k);
  for (int bi = 0; bi < m; ++bi)
    for (int bj = 0; bj < m; ++bj) {
      auto e = S.entries(blocks(bi, bj));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) out(bi * k + i, bj * k + j) = e[i * k + j];
    }
  return out;
}

// ---------------------------------------------------------------------------
// words

void ElemWord::multiply(Side side, std::initializer_list<ElemOp> factors) {
  std::vector<ElemOp> f(factors);
  if (side == Side::Left) std::reverse(f.begin(), f.end());
  for (auto op : f) {
    op.side = side;
    ops.push_back(op);
  }
}

void ElemWord::append(const ElemWord& other) {
  if (other.n != n) fail(ErrorCode::DimensionMismatch, "appending words of different dimension");
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

namespace {

// In-place 1 + r*e_ij action: left adds r*(row j) to row i, right adds
// (column i)*r to column j.
void apply_op(RMatrix& a, const ElemOp& op) {
  const auto& R = a.R();
  const int n = a.n();
  if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= n || op.j >= n)
    fail(ErrorCode::DimensionMismatch, "elementary op indices out of range");
  if (!R.valid(op.r)) fail(ErrorCode::InvalidSpec, "elementary op parameter out of range");
  if (op.side == Side::Left) {
    for (int c = 0; c < n; ++c) a(op.i, c) = R.add(a(op.i, c), R.mul(op.r, a(op.j, c)));
  } else {
    for (int row = 0; row < n; ++row) a(row, op.j) = R.add(a(row, op.j), R.mul(a(row, op.i), op.r));
  }
}

}  // namespace

RMatrix apply_elem_word(const RMatrix& a, const ElemWord& w) {
  if (w.n != a.n()) fail(ErrorCode::DimensionMismatch, "word dimension differs from matrix");
  RMatrix out = a;
  for (const auto& op : w.ops) apply_op(out, op);
  return out;
}

RMatrix evaluate(const RingPtr& ring, const ElemWord& w) {
  return apply_elem_word(RMatrix::identity(ring, w.n), w);
}

ElemWord inverse_word(const FiniteRing& ring, const ElemWord& w) {
  ElemWord inv{w.n, {}};
  for (auto it = w.ops.rbegin(); it != w.ops.rend(); ++it) {
    ElemOp op = *it;
    op.r = ring.neg(op.r);
    inv.ops.push_back(op);
  }
  return inv;
}

bool word_in_ideal(const ElemWord& w, const Ideal& ideal) {
  return std::all_of(w.ops.begin(), w.ops.end(), [&](const ElemOp& op) { return ideal.contains(op.r); });
}

ElemWord map_word(const ElemWord& w, const std::function<Elem(Elem)>& f) {
  ElemWord out = w;
  for (auto& op : out.ops) op.r = f(op.r);
  return out;
}

ElemWord transpose_word(const ElemWord& w) {
  ElemWord out = w;
  for (auto& op : out.ops) {
    op.side = op.side == Side::Left ? Side::Right : Side::Left;
    std::swap(op.i, op.j);
  }
  return out;
}

void multiply_sigma(ElemWord& w, const FiniteRing& R, Side side) {
  const Elem one = R.one(), m1 = R.neg(R.one());
  w.multiply(side, {{side, 0, 1, one}, {side, 1, 0, m1}, {side, 0, 1, one}});
}

void multiply_sigma_inverse(ElemWord& w, const FiniteRing& R, Side side) {
  const Elem one = R.one(), m1 = R.neg(R.one());
  w.multiply(side, {{side, 0, 1, m1}, {side, 1, 0, one}, {side, 0, 1, m1}});
}

json word_to_json(const ElemWord& w, const FiniteRing& ring) {
  json ops = json::array();
  for (const auto& op : w.ops)
    ops.push_back({{"side", op.side == Side::Left ? "left" : "right"},
                   {"i", op.i + 1},
                   {"j", op.j + 1},
                   {"r", ring.describe(op.r)}});
  return {{"n", w.n}, {"ops", ops}};
}

ElemWord word_from_json(const json& j, const FiniteRing& ring) {
  if (!j.is_object() || !j.contains("n") || !j.contains("ops") || j.size() != 2)
    fail(ErrorCode::ParseError, "word must be {n, ops}");
  ElemWord w;
  w.n = j.at("n").get<int>();
  if (w.n < 1) fail(ErrorCode::ParseError, "word dimension must be positive");
  for (const auto& o : j.at("ops")) {
    if (!o.is_object() || o.size() != 4) fail(ErrorCode::ParseError, "op must be {side, i, j, r}");
    ElemOp op;
    const auto side = o.at("side").get<std::string>();
    if (side != "left" && side != "right") fail(ErrorCode::ParseError, "op side must be left|right");
    op.side = side == "left" ? Side::Left : Side::Right;
    op.i = o.at("i").get<int>() - 1;
    op.j = o.at("j").get<int>() - 1;
    if (op.i == op.j || op.i < 0 || op.j < 0 || op.i >= w.n || op.j >= w.n)
      fail(ErrorCode::ParseError, "op indices must be distinct and in [1, n]");
    op.r = ring.parse_element(o.at("r"));
    w.ops.push_back(op);
  }
  return w;
}

// ---------------------------------------------------------------------------
// elementary orbits

namespace {

std::string key_of(const RMatrix& m) {
  std::string k;
  k.reserve(m.entries().size() * 2);
  for (Elem x : m.entries()) {
    k.push_back(static_cast<char>(x & 0xFF));
    k.push_back(static_cast<char>((x >> 8) & 0xFF));
  }
  return k;
}

/// Incrementally explored BFS tree of E_n(R) rooted at the identity.
class OrbitTree {
 public:
  OrbitTree(RingPtr ring, int n) : ring_(std::move(ring)), n_(n) {
    const RMatrix id = RMatrix::identity(ring_, n_);
    nodes_.emplace(key_of(id), Node{std::string(), ElemOp{}});
    frontier_.push_back(id);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (i == j) continue;
        for (Elem r = 0; r < ring_->size(); ++r)
          if (r != ring_->zero()) gens_.push_back(ElemOp{Side::Left, i, j, r});
      }
  }

  std::optional<ElemWord> path_to(const RMatrix& target) {
    std::lock_guard lock(mu_);
    const std::string goal = key_of(target);
    while (!nodes_.count(goal)) {
      if (frontier_.empty()) return std::nullopt;
      expand_one();
    }
    std::vector<ElemOp> rev;
    std::string k = goal;
    while (true) {
      const Node& node = nodes_.at(k);
      if (node.parent.empty() && k == root_key()) break;
      rev.push_back(node.op);
      k = node.parent;
    }
    ElemWord w{n_, {}};
    w.ops.assign(rev.rbegin(), rev.rend());
    return w;
  }

  std::size_t size() {
    std::lock_guard lock(mu_);
    return nodes_.size();
  }

 private:
  struct Node {
    std::string parent;
    ElemOp op;
  };

  const std::string& root_key() {
    if (root_.empty()) root_ = key_of(RMatrix::identity(ring_, n_));
    return root_;
  }

  void expand_one() {
    RMatrix m = frontier_.front();
    frontier_.pop_front();
    const std::string mk = key_of(m);
    for (const auto& g : gens_) {
      RMatrix next = apply_elem_word(m, ElemWord{n_, {g}});
      auto k = key_of(next);
      if (nodes_.count(k)) continue;
      if (nodes_.size() >= guards().orbit)
        fail(ErrorCode::GuardExceeded, "elementary orbit exceeds " + std::to_string(guards().orbit) + " nodes");
      nodes_.emplace(std::move(k), Node{mk, g});
      frontier_.push_back(std::move(next));
    }
  }

  RingPtr ring_;
  int n_;
  std::vector<ElemOp> gens_;
  std::unordered_map<std::string, Node> nodes_;
  std::deque<RMatrix> frontier_;
  std::string root_;
  std::mutex mu_;
};

OrbitTree& orbit_tree(const RingPtr& ring, int n) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<OrbitTree>> trees;
  std::lock_guard lock(mu);
  const std::string key = ring->descriptor().dump() + "#" + std::to_string(n);
  auto& slot = trees[key];
  if (!slot) slot = std::make_unique<OrbitTree>(ring, n);
  return *slot;
}

}  // namespace

std::optional<ElemWord> e_orbit_factor(const RingPtr& ring, int n, const RMatrix& a, const RMatrix& b) {
  if (a.n() != n || b.n() != n) fail(ErrorCode::DimensionMismatch, "orbit query dimension");
  if (!same_ring(a.R(), *ring) || !same_ring(b.R(), *ring)) fail(ErrorCode::RingMismatch, "orbit query ring");
  if (a == b) return ElemWord{n, {}};
  auto b_inv = try_inverse(b);
  if (!b_inv || !try_inverse(a)) fail(ErrorCode::PreconditionFailed, "orbit factorization needs invertible matrices");
  if (n == 1) return std::nullopt;
  return orbit_tree(ring, n).path_to(a * *b_inv);
}

std::size_t orbit_cache_size(const RingPtr& ring, int n) { return orbit_tree(ring, n).size(); }

}  // namespace exlift
