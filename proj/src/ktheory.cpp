#include "exlift/ktheory.hpp"

#include <algorithm>
#include <set>

#include "exlift/error.hpp"

namespace exlift {

KContext make_context(const Ideal& I) {
  return {I.ring(), I, quotient_ring(I), std::make_shared<const VMonoid>(build_v_monoid(I.ring(), 1))};
}

bool is_fredholm(const KContext& ctx, Elem x) { return ctx.quotient->is_unit(ctx.quotient->project(x)); }

ElemWord whitehead_factor(const FiniteRing& S, Elem u) {
  auto inv = S.inverse(u);
  if (!inv) fail(ErrorCode::NotAUnit, S.label(u) + " is not a unit");
  ElemWord w{2, {}};
  w.multiply(Side::Right, {{Side::Right, 0, 1, u}, {Side::Right, 1, 0, S.neg(*inv)}, {Side::Right, 0, 1, u}});
  multiply_sigma_inverse(w, S, Side::Right);
  return w;
}

K0Element K0Element::operator+(const K0Element& o) const {
  K0Element out = *this;
  out.pos.insert(out.pos.end(), o.pos.begin(), o.pos.end());
  out.neg.insert(out.neg.end(), o.neg.begin(), o.neg.end());
  return out;
}

K0Element K0Element::operator-(const K0Element& o) const {
  K0Element out = *this;
  out.pos.insert(out.pos.end(), o.neg.begin(), o.neg.end());
  out.neg.insert(out.neg.end(), o.pos.begin(), o.pos.end());
  return out;
}

K0Element K0Element::cancelled() const {
  K0Element out{{}, neg};
  for (const auto& p : pos) {
    auto it = std::find(out.neg.begin(), out.neg.end(), p);
    if (it != out.neg.end())
      out.neg.erase(it);
    else
      out.pos.push_back(p);
  }
  return out;
}

DeltaResult connecting_delta(const KContext& ctx, Elem ubar, const LiftChooser& lift) {
  const auto& Q = *ctx.quotient;
  const auto& R = ctx.ring;
  ElemWord word = whitehead_factor(Q, ubar);
  ElemWord lifted = word;
  for (std::size_t k = 0; k < lifted.ops.size(); ++k) {
    const Elem rbar = word.ops[k].r;
    const Elem r = lift ? lift(k, rbar) : Q.lift(rbar);
    if (Q.project(r) != rbar) fail(ErrorCode::PreconditionFailed, "lift chooser returned a non-preimage");
    lifted.ops[k].r = r;
  }
  RMatrix v = evaluate(R, lifted);
  RMatrix vinv = evaluate(R, inverse_word(*R, lifted));
  const Elem e10[] = {R->one(), R->zero()};
  RMatrix base = RMatrix::diag(R, e10);
  RMatrix p = v * base * vinv;
  if (!p.is_idempotent() || !(p - base).entries_in(ctx.ideal))
    fail(ErrorCode::VerificationFailed, "conjugated idempotent is not congruent to 1 (+) 0");
  return {word, lifted, v, p, K0Element{{p}, {base}}};
}

DeltaResult index(const KContext& ctx, Elem x) {
  if (!is_fredholm(ctx, x)) fail(ErrorCode::NotFredholm, ctx.ring->label(x) + " is not a unit modulo the ideal");
  return connecting_delta(ctx, ctx.quotient->project(x));
}

std::vector<int> k0_class_vector(const KContext& ctx, const K0Element& k) {
  std::vector<int> total(ctx.v->types.size(), 0);
  for (const auto& p : k.pos) {
    auto c = class_counts(*ctx.v, p);
    for (std::size_t i = 0; i < c.size(); ++i) total[i] += c[i];
  }
  for (const auto& n : k.neg) {
    auto c = class_counts(*ctx.v, n);
    for (std::size_t i = 0; i < c.size(); ++i) total[i] -= c[i];
  }
  return total;
}

std::string describe(const KContext& ctx, const K0Element& k) {
  auto side = [&](const std::vector<RMatrix>& blocks) {
    std::string s = "[";
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto c = class_counts(*ctx.v, blocks[b]);
      s += b ? " + (" : "(";
      for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
      s += ")";
    }
    return s + "]";
  };
  return side(k.pos) + " - " + side(k.neg);
}

std::optional<RMatrix> inverse_by_powers(const RMatrix& z, std::size_t cap) {
  std::set<std::vector<Elem>> seen;
  RMatrix prev = RMatrix::identity(z.ring(), z.n()), cur = z;
  for (std::size_t k = 1; k <= cap; ++k) {
    if (cur.is_identity()) return prev;
    if (!seen.insert({cur.entries().begin(), cur.entries().end()}).second) return std::nullopt;
    prev = cur;
    cur = cur * z;
  }
  fail(ErrorCode::GuardExceeded, "matrix order exceeds " + std::to_string(cap));
}

namespace {

RMatrix block_sum(const RingPtr& R, const std::vector<RMatrix>& blocks) {
  std::optional<RMatrix> out;
  for (const auto& b : blocks) out = out ? direct_sum(*out, b) : b;
  return out ? *out : RMatrix(R, 1);
}

std::size_t power_guarded(std::size_t base, std::size_t exp) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    total *= base;
    if (total > guards().search) fail(ErrorCode::GuardExceeded, "strict equivalence search");
  }
  return total;
}

// x = P + i over i in M_n(I) with P x N = x; for each, y column by column.
std::optional<std::pair<RMatrix, RMatrix>> strict_search(const Ideal& I, const RMatrix& P, const RMatrix& N) {
  const auto& R = P.R();
  const int n = P.n();
  const auto& mem = I.members();
  const std::size_t total = power_guarded(mem.size(), static_cast<std::size_t>(n * n));
  const std::size_t per_col = power_guarded(mem.size(), static_cast<std::size_t>(n));
  std::size_t work = 0;
  std::vector<std::size_t> digits(static_cast<std::size_t>(n * n), 0);
  for (std::size_t step = 0; step < total; ++step) {
    RMatrix x = P;
    for (int s = 0; s < n * n; ++s) x(s / n, s % n) = R.add(x(s / n, s % n), mem[digits[static_cast<std::size_t>(s)]]);
    for (std::size_t s = 0; s < digits.size(); ++s) {
      if (++digits[s] < mem.size()) break;
      digits[s] = 0;
    }
    if (!(P * x * N == x)) continue;

    std::vector<std::vector<std::vector<Elem>>> cols(static_cast<std::size_t>(n));
    bool feasible = true;
    for (int j = 0; j < n && feasible; ++j) {
      std::vector<std::size_t> cd(static_cast<std::size_t>(n), 0);
      for (std::size_t c = 0; c < per_col; ++c) {
        std::vector<Elem> col(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i)] = R.add(P(i, j), mem[cd[static_cast<std::size_t>(i)]]);
        for (std::size_t s = 0; s < cd.size(); ++s) {
          if (++cd[s] < mem.size()) break;
          cd[s] = 0;
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          Elem acc = R.zero();
          for (int l = 0; l < n; ++l) acc = R.add(acc, R.mul(x(i, l), col[static_cast<std::size_t>(l)]));
          ok = acc == P(i, j);
        }
        if (ok) cols[static_cast<std::size_t>(j)].push_back(col);
      }
      feasible = !cols[static_cast<std::size_t>(j)].empty();
      if ((work += per_col) > 64 * guards().search) fail(ErrorCode::GuardExceeded, "strict equivalence search");
    }
    if (!feasible) continue;

    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    for (;;) {
      RMatrix y(P.ring(), n);
      for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) y(i, j) = cols[static_cast<std::size_t>(j)][pick[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)];
      if (y * x == N && N * y * P == y) return std::pair{x, y};
      if (++work > 64 * guards().search) fail(ErrorCode::GuardExceeded, "strict equivalence search");
      std::size_t s = 0;
      for (; s < pick.size(); ++s) {
        if (++pick[s] < cols[s].size()) break;
        pick[s] = 0;
      }
      if (s == pick.size()) break;
    }
  }
  return std::nullopt;
}

bool strict_witness_ok(const Ideal& I, const RMatrix& P, const RMatrix& N, const RMatrix& x, const RMatrix& y) {
  return x * y == P && y * x == N && (x - P).entries_in(I) && (y - P).entries_in(I);
}

}  // namespace

ZeroTest k0_zero_test(const KContext& ctx, const K0Element& k0, int stab) {
  ZeroTest out;
  const auto cv = k0_class_vector(ctx, k0);
  out.relaxed = std::all_of(cv.begin(), cv.end(), [](int c) { return c == 0; });
  if (!out.relaxed) {
    out.strict = false;
    out.note = "class counts differ";
    return out;
  }

  const K0Element k = k0.cancelled();
  if (k.pos.empty() && k.neg.empty()) {
    out.strict = true;
    out.note = "blocks cancel";
    return out;
  }
  const auto& R = ctx.ring;
  RMatrix P = block_sum(R, k.pos), N = block_sum(R, k.neg);
  if (P.n() < N.n()) P = direct_sum(P, RMatrix(R, N.n() - P.n()));
  if (N.n() < P.n()) N = direct_sum(N, RMatrix(R, P.n() - N.n()));
  if (!(P - N).entries_in(ctx.ideal)) {
    out.strict = false;
    out.note = "sides are not congruent modulo the ideal";
    return out;
  }

  // z = P N + (1 - P)(1 - N) is congruent to 1 and satisfies z N = P z.
  const RMatrix one = RMatrix::identity(R, P.n());
  const RMatrix z = P * N + (one - P) * (one - N);
  try {
    if (auto zinv = inverse_by_powers(z)) {
      RMatrix x = P * N, y = N * *zinv;
      if (strict_witness_ok(ctx.ideal, P, N, x, y)) {
        out.strict = true;
        out.x = x;
        out.y = y;
        out.note = "conjugating unit";
        return out;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GuardExceeded) throw;
  }

  for (int m = 0; m <= stab; ++m) {
    RMatrix Pm = m ? direct_sum(P, RMatrix::identity(R, m)) : P;
    RMatrix Nm = m ? direct_sum(N, RMatrix::identity(R, m)) : N;
    try {
      if (auto w = strict_search(ctx.ideal, Pm, Nm)) {
        out.strict = true;
        out.padding = m;
        out.x = w->first;
        out.y = w->second;
        out.note = "search";
        return out;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::GuardExceeded) throw;
      out.note = "strict search exceeds the guard at padding " + std::to_string(m);
      return out;
    }
  }
  out.strict = false;
  out.note = "no witness up to padding " + std::to_string(stab);
  return out;
}

}  // namespace exlift
