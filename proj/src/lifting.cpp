#include "exlift/lifting.hpp"

#include <algorithm>

#include "exlift/error.hpp"
#include "exlift/exchange.hpp"

namespace exlift {

namespace {

std::shared_ptr<LiftContext> build_context(const Ideal& I, int truncation) {
  auto ctx = std::make_shared<LiftContext>(LiftContext{I.ring(), I, quotient_ring(I), nullptr, truncation, false,
                                                       false, nullptr, {}});
  ctx->v = std::make_shared<const VMonoid>(build_v_monoid(I.ring(), truncation));
  ctx->exchange = is_exchange_ideal(I);
  const OrderIdeal vi = v_order_ideal(*ctx->v, I);
  ctx->separative = !separativity_counterexample(ctx->v->monoid, &vi);
  for (Elem e : I.ring()->idempotents())
    ctx->idempotent_counts.emplace(e, class_counts(*ctx->v, RMatrix::scalar(I.ring(), e)));
  return ctx;
}

bool counts_leq(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::pair<Elem, Elem> least_unimodular(const FiniteRing& R, Elem c, Elem d) {
  for (Elem x = 0; x < R.size(); ++x) {
    const Elem cx = R.mul(c, x);
    for (Elem y = 0; y < R.size(); ++y)
      if (R.add(cx, R.mul(d, y)) == R.one()) return {x, y};
  }
  fail(ErrorCode::PreconditionFailed, "last row is not right unimodular");
}

RowPass row_pass(const LiftContext& ctx, Elem c, Elem d) {
  const auto& R = *ctx.ring;
  RowPass p;
  p.c = c;
  p.d = d;
  std::tie(p.x, p.y) = least_unimodular(R, c, d);
  auto w = exchange_witness_embedded(ctx.ideal, R.mul(c, p.x));
  if (!w) fail(ErrorCode::SearchExhausted, "no exchange idempotent for c*x");
  p.e = w->e;
  p.t0 = w->r;
  p.t2 = w->s;
  const Elem ce = R.sub(R.one(), p.e);
  p.r = R.mul3(p.x, p.t0, p.e);
  p.s = R.mul3(p.y, p.t2, ce);
  if (R.mul(c, p.r) != p.e || R.mul(d, p.s) != ce)
    fail(ErrorCode::VerificationFailed, "exchange normalization does not hold");
  return p;
}

void push_pass_ops(ElemWord& word, const FiniteRing& R, const RowPass& p) {
  word.ops.push_back({Side::Right, 1, 0, R.neg(R.mul(p.s, p.c))});
  word.ops.push_back({Side::Right, 0, 1, R.neg(R.mul(p.r, p.d))});
}

bool same_right(const FiniteRing& R, Elem a, Elem b) { return right_multiples(R, a) == right_multiples(R, b); }

void require_two_by_two(const LiftContext& ctx, const RMatrix& a) {
  if (a.n() != 2) fail(ErrorCode::DimensionMismatch, "expected a 2x2 matrix");
  if (!same_ring(a.R(), *ctx.ring)) fail(ErrorCode::RingMismatch, "matrix lives over another ring");
}

}  // namespace

const std::vector<int>& LiftContext::counts(Elem e) const {
  auto it = idempotent_counts.find(e);
  if (it == idempotent_counts.end()) fail(ErrorCode::NotIdempotent, ring->label(e) + " is not idempotent");
  return it->second;
}

std::shared_ptr<const LiftContext> make_lift_context(const Ideal& I, int truncation) {
  auto ctx = build_context(I, truncation);
  auto op = opposite_ring(I.ring());
  ctx->opposite = build_context(I.rebind(op), truncation);
  return ctx;
}

Elem join_idempotent(const LiftContext& ctx, Elem e1, Elem e2) {
  const auto& R = *ctx.ring;
  if (!R.is_idempotent(e1) || !R.is_idempotent(e2)) fail(ErrorCode::PreconditionFailed, "join of non-idempotents");
  if (!ctx.ideal.contains(e1)) fail(ErrorCode::PreconditionFailed, "first idempotent is not in the ideal");
  std::vector<bool> span(R.size(), false);
  const auto a = right_multiples(R, e1), b = right_multiples(R, e2);
  for (Elem x : a)
    for (Elem y : b) span[R.add(x, y)] = true;
  const Elem pair[] = {e1, e2};
  const auto target = Ideal::closure(ctx.ring, pair).members();
  const auto& c1 = ctx.counts(e1);
  const auto& c2 = ctx.counts(e2);
  for (Elem g : R.idempotents()) {
    if (!span[g] || !counts_leq(c1, ctx.counts(g)) || !counts_leq(c2, ctx.counts(g))) continue;
    if (principal_ideal(ctx.ring, g).members() == target) return g;
  }
  fail(ErrorCode::SearchExhausted, "no joining idempotent");
}

ReductionResult reduce_row(const LiftContext& ctx, const RMatrix& alpha) {
  require_two_by_two(ctx, alpha);
  const auto& R = *ctx.ring;
  const auto& I = ctx.ideal;
  if (!I.contains(alpha(0, 1)) || !I.contains(alpha(1, 0)))
    fail(ErrorCode::PreconditionFailed, "off-diagonal entries must lie in the ideal");
  if (!try_inverse(alpha)) fail(ErrorCode::PreconditionFailed, "matrix is not invertible");

  ReductionResult out;
  out.side = Side::Right;
  out.input = alpha;
  out.word = ElemWord{2, {}};
  auto& tr = out.trace;

  const Elem c = alpha(1, 0), d = alpha(1, 1);
  tr.first = row_pass(ctx, c, d);
  push_pass_ops(out.word, R, tr.first);
  const Elem e = tr.first.e, ce = R.sub(R.one(), e), r = tr.first.r, s = tr.first.s;
  tr.w = R.add(R.mul(e, c), R.mul(ce, d));

  auto fx = exchange_witness_embedded(I, R.mul3(e, tr.w, r));
  if (!fx) fail(ErrorCode::SearchExhausted, "no exchange idempotent for e*w*r");
  tr.f = fx->e;
  tr.t3 = fx->r;
  tr.t4 = fx->s;
  const Elem cf = R.sub(R.one(), tr.f);
  tr.w1 = R.mul3(r, tr.t3, tr.f);
  tr.w2 = R.mul3(s, tr.t4, cf);
  if (R.mul3(e, tr.w, tr.w1) != tr.f || R.mul3(ce, tr.w, tr.w2) != cf)
    fail(ErrorCode::VerificationFailed, "f normalization does not hold");
  tr.f1 = R.mul3(tr.w, tr.w1, e);
  tr.f2 = R.mul3(tr.w, tr.w2, ce);
  tr.g = join_idempotent(ctx, tr.f1, tr.f2);
  bool found = false;
  for (Elem t = 0; t < R.size() && !found; ++t)
    if (R.mul(tr.w, t) == tr.g) {
      tr.wp = t;
      found = true;
    }
  if (!found) fail(ErrorCode::SearchExhausted, "g is not in wR");

  out.word.ops.push_back({Side::Right, 0, 1, R.mul(r, c)});
  out.word.ops.push_back({Side::Right, 1, 0, R.neg(R.mul3(tr.wp, e, c))});
  const Elem c2 = R.mul3(R.sub(R.one(), tr.g), e, c);
  tr.second = row_pass(ctx, c2, tr.w);
  push_pass_ops(out.word, R, tr.second);
  tr.c_out = R.mul(tr.second.e, c2);
  tr.d_out = R.mul(R.sub(R.one(), tr.second.e), tr.w);

  const auto cr = right_multiples(R, tr.c_out), dr = right_multiples(R, tr.d_out);
  found = false;
  for (Elem a : cr)
    if (std::binary_search(dr.begin(), dr.end(), R.sub(R.one(), a))) {
      tr.h = R.sub(R.one(), a);
      found = true;
      break;
    }
  if (!found) fail(ErrorCode::SearchExhausted, "last row does not split R");
  out.idempotent = tr.h;
  out.result = apply_elem_word(alpha, out.word);

  const Elem h = tr.h, ch = R.sub(R.one(), h);
  if (out.result(1, 0) != tr.c_out || out.result(1, 1) != tr.d_out)
    fail(ErrorCode::VerificationFailed, "replayed last row differs from the trace");
  if (!R.is_idempotent(h) || !I.contains(ch) || !same_right(R, tr.c_out, ch) || !same_right(R, tr.d_out, h) ||
      !principal_ideal(ctx.ring, h).is_whole())
    fail(ErrorCode::VerificationFailed, "row reduction contracts fail");
  const auto rc = left_multiples(R, c);
  if (!std::binary_search(rc.begin(), rc.end(), tr.c_out))
    fail(ErrorCode::VerificationFailed, "c' is not in Rc");
  return out;
}

ReductionResult reduce_col(const LiftContext& ctx, const RMatrix& alpha) {
  require_two_by_two(ctx, alpha);
  if (!ctx.opposite) fail(ErrorCode::PreconditionFailed, "context has no opposite ring");
  const auto& op = *ctx.opposite;
  ReductionResult res = reduce_row(op, rebind(transpose(alpha), op.ring));
  ReductionResult out;
  out.side = Side::Left;
  out.input = alpha;
  out.word = transpose_word(res.word);
  out.idempotent = res.idempotent;
  out.trace = res.trace;
  out.result = apply_elem_word(alpha, out.word);
  if (!(out.result == transpose(rebind(res.result, ctx.ring))))
    fail(ErrorCode::VerificationFailed, "column reduction disagrees with the opposite row reduction");
  return out;
}

UnitRegularWitness unit_regular_witness(const LiftContext& ctx, Elem d) {
  const auto& R = *ctx.ring;
  const auto& I = ctx.ideal;
  if (!I.contains(d)) fail(ErrorCode::PreconditionFailed, "element is not in the ideal");
  if (!ctx.exchange) fail(ErrorCode::PreconditionFailed, "ideal is not exchange");
  if (!ctx.separative)
    fail(ErrorCode::PreconditionFailed,
         "V(I) is not separative at truncation " + std::to_string(ctx.truncation));
  UnitRegularWitness out;
  out.d = d;
  std::optional<Elem> p, q;
  const auto dr = right_multiples(R, d), dl = left_multiples(R, d);
  for (Elem e : R.idempotents()) {
    if (!I.contains(e)) continue;
    if (!p && right_multiples(R, e) == dr) p = R.sub(R.one(), e);
    if (!q && left_multiples(R, e) == dl) q = R.sub(R.one(), e);
  }
  if (!p) fail(ErrorCode::PreconditionFailed, "no idempotent 1-p in I with dR = (1-p)R");
  if (!q) fail(ErrorCode::PreconditionFailed, "no idempotent 1-q in I with Rd = R(1-q)");
  out.p = *p;
  out.q = *q;
  if (!principal_ideal(ctx.ring, out.p).is_whole()) fail(ErrorCode::PreconditionFailed, "RpR is not R");
  if (!principal_ideal(ctx.ring, out.q).is_whole()) fail(ErrorCode::PreconditionFailed, "RqR is not R");

  std::vector<Elem> candidates{R.one()};
  for (Elem u : R.units())
    if (u != R.one()) candidates.push_back(u);
  for (Elem w : candidates)
    if (R.mul3(d, w, d) == d) {
      out.w = w;
      out.f = R.mul(d, w);
      out.u = *R.inverse(w);
      return out;
    }
  fail(ErrorCode::SearchExhausted, "no unit w with d w d = d");
}

DiagonalizationResult diagonalize_2x2(const LiftContext& ctx, const RMatrix& alpha) {
  require_two_by_two(ctx, alpha);
  const auto& R = *ctx.ring;
  const auto& I = ctx.ideal;
  if (!I.contains(alpha(0, 1)) || !I.contains(alpha(1, 0)) || !I.contains(R.sub(alpha(1, 1), R.one())))
    fail(ErrorCode::PreconditionFailed, "need b, c and d - 1 in the ideal");

  DiagonalizationResult out;
  out.alpha = alpha;
  out.row = reduce_row(ctx, alpha);
  out.gamma = ElemWord{2, {}};
  multiply_sigma(out.gamma, R, Side::Left);
  out.beta = out.row.word;
  ElemWord sigma_right{2, {}};
  multiply_sigma(sigma_right, R, Side::Right);
  out.beta.append(sigma_right);

  ElemWord both = out.gamma;
  both.append(out.beta);
  out.alpha_prime = apply_elem_word(alpha, both);
  const RMatrix& a0 = out.row.result;
  if (out.alpha_prime(0, 0) != R.neg(a0(1, 1)) || out.alpha_prime(0, 1) != a0(1, 0) ||
      out.alpha_prime(1, 0) != a0(0, 1) || out.alpha_prime(1, 1) != R.neg(a0(0, 0)))
    fail(ErrorCode::VerificationFailed, "sigma conjugation mismatch");

  out.col = reduce_col(ctx, out.alpha_prime);
  out.gamma.append(out.col.word);
  const Elem b1 = out.col.result(0, 1);

  bool found = false;
  for (Elem e : R.idempotents())
    if (I.contains(e) && same_right(R, e, b1)) {
      out.one_minus_p = e;
      found = true;
      break;
    }
  if (!found) fail(ErrorCode::SearchExhausted, "no idempotent of I generating b'R");
  out.regular = unit_regular_witness(ctx, b1);
  const Elem f = out.regular.f, cf = R.sub(R.one(), f);
  out.u = out.regular.u;
  out.u_inv = out.regular.w;

  ElemWord sigma_inv{2, {}};
  multiply_sigma_inverse(sigma_inv, R, Side::Left);
  out.gamma.append(sigma_inv);
  const Elem lam[] = {R.one(), out.u_inv};
  const RMatrix lambda = RMatrix::diag(ctx.ring, lam);
  RMatrix cur = apply_elem_word(out.col.result, sigma_inv) * lambda;
  if (cur(1, 1) != f) fail(ErrorCode::VerificationFailed, "(2,2) entry is not f after the sigma move");
  out.t = cur(1, 0);

  out.epsilon = ElemWord{2, {{Side::Right, 1, 0, R.neg(R.mul(f, out.t))}}};
  found = false;
  const Elem target = R.mul(cf, out.t);
  for (Elem v = 0; v < R.size() && !found; ++v)
    if (R.mul(v, cf) == v && R.mul(target, v) == cf) {
      out.v = v;
      found = true;
    }
  if (!found) fail(ErrorCode::SearchExhausted, "no v in R(1-f) with (1-f)t v = 1-f");
  out.epsilon.ops.push_back({Side::Right, 0, 1, out.v});
  cur = apply_elem_word(cur, out.epsilon);
  out.zp = cur(0, 1);
  out.gamma.ops.push_back({Side::Left, 0, 1, R.neg(out.zp)});
  out.epsilon.ops.push_back({Side::Right, 1, 0, R.neg(target)});

  RMatrix full = apply_elem_word(apply_elem_word(alpha, out.gamma), out.beta) * lambda;
  out.result = apply_elem_word(full, out.epsilon);
  out.a_prime = out.result(0, 0);
  if (out.result(0, 1) != R.zero() || out.result(1, 0) != R.zero() || out.result(1, 1) != R.one())
    fail(ErrorCode::VerificationFailed, "diagonalization did not reach a' (+) 1");
  const auto& Q = *ctx.quotient;
  if (!R.is_unit(out.a_prime) ||
      Q.project(out.a_prime) != Q.project(R.mul(alpha(0, 0), out.u_inv)))
    fail(ErrorCode::VerificationFailed, "pi(a') differs from pi(a u^-1)");
  return out;
}

std::optional<Elem> oracle_lift(const Ideal& I, Elem x) {
  const auto& R = *I.ring();
  for (Elem u : R.units())
    if (I.contains(R.sub(x, u))) return u;
  return std::nullopt;
}

namespace {

RMatrix block_matrix(const RingPtr& ring, const FiniteRing& S, Elem s) {
  const auto e = S.entries(s);
  const int k = S.dim();
  RMatrix out(ring, k);
  for (int i = 0; i < k * k; ++i) out(i / k, i % k) = e[static_cast<std::size_t>(i)];
  return out;
}

}  // namespace

LiftOutcome lift_unit(const LiftContext& ctx, Elem x, const LiftOptions& options) {
  const auto& R = *ctx.ring;
  const auto& Q = ctx.quotient;
  const KContext kctx = ctx.k_context();
  if (!is_fredholm(kctx, x)) fail(ErrorCode::NotFredholm, R.label(x) + " is not a unit modulo the ideal");
  if (!ctx.exchange) fail(ErrorCode::HypothesisFailed, "ideal is not exchange");
  if (!ctx.separative)
    fail(ErrorCode::HypothesisFailed, "V(I) is not separative at truncation " + std::to_string(ctx.truncation));

  LiftOutcome out;
  const DeltaResult idx = index(kctx, x);
  out.index_test = k0_zero_test(kctx, idx.value);
  if (!out.index_test.relaxed) {
    out.nonzero_index = idx.value;
    return out;
  }

  const Elem xbar = Q->project(x);
  LiftCertificate cert;
  cert.x = x;
  cert.truncation = ctx.truncation;
  cert.forced_m4 = options.force_m4;

  auto find_orbit = [&](int m) -> bool {
    std::vector<Elem> order;
    if (R.is_unit(x)) order.push_back(x);
    for (Elem u : R.units())
      if (u != x) order.push_back(u);
    for (Elem y1 : order) {
      const Elem ybar = Q->project(y1);
      RMatrix A = RMatrix::identity(Q, m), B = RMatrix::identity(Q, m);
      A(0, 0) = xbar;
      B(0, 0) = ybar;
      if (auto w = e_orbit_factor(Q, m, A, B)) {
        cert.y1 = y1;
        cert.m = m;
        cert.orbit = *w;
        cert.lifted = map_word(*w, [&](Elem r) { return Q->lift(r); });
        RMatrix Y = RMatrix::identity(ctx.ring, m);
        Y(0, 0) = y1;
        cert.w1 = apply_elem_word(Y, cert.lifted);
        return true;
      }
    }
    return false;
  };

  bool found = !options.force_m4 && find_orbit(2);
  if (!found) {
    if (!options.allow_m4 && !options.force_m4) fail(ErrorCode::SearchExhausted, "no unit y1 at m = 2");
    if (!find_orbit(4)) fail(ErrorCode::GuardExceeded, "no unit y1 at m = 4 and larger m is not supported");
  }

  RMatrix w = cert.w1;
  if (cert.m == 4) {
    auto S = matrix_ring(ctx.ring, 2);
    auto sctx = make_lift_context(matrix_ideal(S, ctx.ideal), ctx.truncation);
    LiftStage stage{2, diagonalize_2x2(*sctx, to_blocks(cert.w1, S))};
    const Elem w2 = S->mul(stage.diag.a_prime, stage.diag.u);
    cert.stages.push_back(std::move(stage));
    w = block_matrix(ctx.ring, *S, w2);
  }
  LiftStage last{1, diagonalize_2x2(ctx, w)};
  cert.y = R.mul(last.diag.a_prime, last.diag.u);
  cert.stages.push_back(std::move(last));

  if (!R.is_unit(cert.y) || !ctx.ideal.contains(R.sub(x, cert.y)))
    fail(ErrorCode::VerificationFailed, "lifted element is not a unit congruent to x");
  cert.oracle_confirmed = oracle_lift(ctx.ideal, x).has_value();
  out.certificate = std::move(cert);
  return out;
}

}  // namespace exlift
