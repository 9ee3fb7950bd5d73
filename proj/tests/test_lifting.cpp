#include <doctest.h>

#include <algorithm>

#include "exlift/corpus.hpp"
#include "exlift/error.hpp"
#include "exlift/lifting.hpp"

using namespace exlift;

namespace {

Ideal gen(const RingPtr& R, Elem g) { return Ideal::closure(R, std::span<const Elem>(&g, 1)); }

Elem mat(const FiniteRing& M, std::initializer_list<Elem> e) {
  std::vector<Elem> v(e);
  return M.from_entries(v);
}

// All 2x2 invertible matrices with b, c in I (and d - 1 in I when asked).
std::vector<RMatrix> candidates(const Ideal& I, bool diag_pre) {
  const auto& R = I.ring();
  std::vector<RMatrix> out;
  for (Elem a = 0; a < R->size(); ++a)
    for (Elem b : I.members())
      for (Elem c : I.members())
        for (Elem d = 0; d < R->size(); ++d) {
          if (diag_pre && !I.contains(R->sub(d, R->one()))) continue;
          RMatrix m(R, 2);
          m(0, 0) = a;
          m(0, 1) = b;
          m(1, 0) = c;
          m(1, 1) = d;
          if (try_inverse(m)) out.push_back(m);
        }
  return out;
}

void check_row(const LiftContext& ctx, const ReductionResult& r) {
  const auto& R = *ctx.ring;
  const Elem h = r.idempotent, c1 = r.result(1, 0), d1 = r.result(1, 1);
  CHECK(word_in_ideal(r.word, ctx.ideal));
  CHECK(r.word.size() == 6);
  CHECK(apply_elem_word(r.input, r.word) == r.result);
  CHECK(project(r.result, ctx.quotient) == project(r.input, ctx.quotient));
  CHECK(R.is_idempotent(h));
  CHECK(ctx.ideal.contains(R.sub(R.one(), h)));
  CHECK(right_multiples(R, c1) == right_multiples(R, R.sub(R.one(), h)));
  CHECK(right_multiples(R, d1) == right_multiples(R, h));
  CHECK(principal_ideal(ctx.ring, h).is_whole());
  auto rc = left_multiples(R, r.input(1, 0));
  CHECK(std::binary_search(rc.begin(), rc.end(), c1));
}

void check_col(const LiftContext& ctx, const ReductionResult& r) {
  const auto& R = *ctx.ring;
  const Elem k = r.idempotent, b1 = r.result(0, 1), d1 = r.result(1, 1);
  CHECK(word_in_ideal(r.word, ctx.ideal));
  CHECK(std::all_of(r.word.ops.begin(), r.word.ops.end(), [](const ElemOp& o) { return o.side == Side::Left; }));
  CHECK(apply_elem_word(r.input, r.word) == r.result);
  CHECK(R.is_idempotent(k));
  CHECK(left_multiples(R, b1) == left_multiples(R, R.sub(R.one(), k)));
  CHECK(left_multiples(R, d1) == left_multiples(R, k));
  CHECK(principal_ideal(ctx.ring, k).is_whole());
  auto br = right_multiples(R, r.input(0, 1));
  CHECK(std::binary_search(br.begin(), br.end(), b1));
}

void check_diag(const LiftContext& ctx, const DiagonalizationResult& d) {
  const auto& R = *ctx.ring;
  const Elem lam[] = {R.one(), d.u_inv};
  RMatrix full = apply_elem_word(apply_elem_word(d.alpha, d.gamma), d.beta) * RMatrix::diag(ctx.ring, lam);
  full = apply_elem_word(full, d.epsilon);
  const Elem out[] = {d.a_prime, R.one()};
  CHECK(full == RMatrix::diag(ctx.ring, out));
  CHECK(R.is_unit(d.u));
  CHECK(R.mul(d.u, d.u_inv) == R.one());
  const auto& Q = *ctx.quotient;
  CHECK(Q.project(d.a_prime) == Q.project(R.mul(d.alpha(0, 0), d.u_inv)));
  CHECK(R.mul(d.regular.f, d.regular.u) == d.regular.d);
  CHECK(R.is_idempotent(d.regular.f));
}

}  // namespace

TEST_CASE("join idempotent examples") {
  auto Z6 = zmod(6);
  auto ctx = make_lift_context(Ideal::whole(Z6));
  CHECK(join_idempotent(*ctx, 0, 0) == 0);
  CHECK(join_idempotent(*ctx, 0, 1) == 1);
  CHECK(join_idempotent(*ctx, 3, 4) == 1);
  CHECK_THROWS_AS(join_idempotent(*ctx, 2, 1), Error);
}

TEST_CASE("join idempotent contract on small rings") {
  for (auto R : {zmod(6), matrix_ring(zmod(2), 2), product_ring(zmod(2), matrix_ring(zmod(2), 2))}) {
    auto ctx = make_lift_context(Ideal::whole(R));
    for (Elem e1 : R->idempotents())
      for (Elem e2 : R->idempotents()) {
        const Elem g = join_idempotent(*ctx, e1, e2);
        CHECK(R->is_idempotent(g));
        const Elem pair[] = {e1, e2};
        CHECK(principal_ideal(R, g).members() == Ideal::closure(R, pair).members());
        const auto& cg = ctx->counts(g);
        for (Elem e : {e1, e2}) {
          const auto& ce = ctx->counts(e);
          for (std::size_t i = 0; i < cg.size(); ++i) CHECK(ce[i] <= cg[i]);
        }
      }
  }
}

TEST_CASE("reduce row examples") {
  auto Z4 = zmod(4);
  auto ctx = make_lift_context(gen(Z4, 2));
  auto id = reduce_row(*ctx, RMatrix::identity(Z4, 2));
  CHECK(id.result.is_identity());
  CHECK(id.idempotent == 1);
  CHECK(id.trace.c_out == 0);
  CHECK(id.trace.d_out == 1);

  auto a = RMatrix::from_rows(Z4, {{1, 0}, {2, 1}});
  auto r = reduce_row(*ctx, a);
  CHECK(r.word.ops[0] == ElemOp{Side::Right, 1, 0, 2});
  CHECK(apply_elem_word(a, ElemWord{2, {r.word.ops[0]}}).is_identity());
  CHECK(r.result(1, 0) == 0);
  CHECK(r.result(1, 1) == 1);
  CHECK(r.idempotent == 1);
  check_row(*ctx, r);

  // c = 0 takes e = 0 and every parameter stays in I.
  auto c0 = reduce_row(*ctx, RMatrix::from_rows(Z4, {{3, 2}, {0, 1}}));
  CHECK(c0.trace.first.e == 0);
  check_row(*ctx, c0);

  CHECK_THROWS_AS(reduce_row(*ctx, RMatrix::from_rows(Z4, {{1, 1}, {0, 1}})), Error);
  CHECK_THROWS_AS(reduce_row(*ctx, RMatrix::from_rows(Z4, {{2, 0}, {0, 1}})), Error);
}

TEST_CASE("reduce col examples are the transposes") {
  auto Z4 = zmod(4);
  auto ctx = make_lift_context(gen(Z4, 2));
  auto id = reduce_col(*ctx, RMatrix::identity(Z4, 2));
  CHECK(id.result.is_identity());
  CHECK(id.idempotent == 1);
  auto a = RMatrix::from_rows(Z4, {{1, 2}, {0, 1}});
  auto r = reduce_col(*ctx, a);
  CHECK(r.word.ops[0] == ElemOp{Side::Left, 0, 1, 2});
  CHECK(r.result(0, 1) == 0);
  check_col(*ctx, r);
  check_col(*ctx, reduce_col(*ctx, RMatrix::from_rows(Z4, {{3, 0}, {2, 1}})));
}

TEST_CASE("row and column contracts over GL2 of small rings") {
  std::vector<Ideal> ideals{gen(zmod(4), 2), gen(zmod(8), 2), gen(zmod(6), 3), gen(zmod(9), 3),
                            Ideal::whole(zmod(6))};
  auto T = triangular_ring(zmod(2), 2);
  ideals.push_back(gen(T, mat(*T, {0, 1, 0, 0})));
  auto M = matrix_ring(zmod(2), 2);
  ideals.push_back(Ideal::whole(M));
  auto P = product_ring(zmod(2), M);
  ideals.push_back(gen(P, P->pair(0, M->one())));
  for (const auto& I : ideals) {
    auto ctx = make_lift_context(I);
    auto all = candidates(I, false);
    CAPTURE(I.ring()->descriptor().dump());
    REQUIRE(!all.empty());
    for (std::size_t k = 0; k < all.size(); k += std::max<std::size_t>(1, all.size() / 300)) {
      check_row(*ctx, reduce_row(*ctx, all[k]));
      check_col(*ctx, reduce_col(*ctx, all[k]));
    }
  }
}

TEST_CASE("unit regular witness examples") {
  auto M = matrix_ring(zmod(2), 2);
  auto P = product_ring(zmod(2), M);
  auto ctx = make_lift_context(gen(P, P->pair(0, M->one())));
  auto z = unit_regular_witness(*ctx, P->zero());
  CHECK(z.f == P->zero());
  CHECK(z.u == P->one());
  const Elem d = P->pair(0, mat(*M, {1, 0, 0, 0}));
  auto w = unit_regular_witness(*ctx, d);
  CHECK(w.f == d);
  CHECK(w.u == P->one());
  CHECK(w.p == P->pair(1, mat(*M, {0, 0, 0, 1})));
  CHECK(w.q == w.p);

  // For e12, w = 1 fails and a permutation is the first unit with d w d = d.
  auto mctx = make_lift_context(Ideal::whole(M));
  const Elem e12 = mat(*M, {0, 1, 0, 0});
  auto sw = unit_regular_witness(*mctx, e12);
  CHECK(sw.w != M->one());
  CHECK(sw.f == mat(*M, {1, 0, 0, 0}));
  CHECK(M->mul(sw.f, sw.u) == e12);
  CHECK_THROWS_AS(unit_regular_witness(*mctx, M->one()), Error);
}

TEST_CASE("unit regular witness refuses when RpR is not R") {
  // In zmod6 with I = R, d = 3 gives 1 - p = 3 and p = 4 with RpR = 4R != R.
  auto Z6 = zmod(6);
  auto ctx = make_lift_context(Ideal::whole(Z6));
  try {
    unit_regular_witness(*ctx, 3);
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
    CHECK(std::string(e.what()).find("RpR") != std::string::npos);
  }
  auto ctx4 = make_lift_context(gen(zmod(4), 2));
  CHECK_THROWS_AS(unit_regular_witness(*ctx4, 1), Error);
}

TEST_CASE("diagonalize examples") {
  auto Z4 = zmod(4);
  auto ctx = make_lift_context(gen(Z4, 2));
  auto id = diagonalize_2x2(*ctx, RMatrix::identity(Z4, 2));
  CHECK(id.a_prime == 1);
  CHECK(id.u == 1);
  check_diag(*ctx, id);
  auto d3 = diagonalize_2x2(*ctx, RMatrix::from_rows(Z4, {{3, 0}, {0, 1}}));
  check_diag(*ctx, d3);
  auto a = diagonalize_2x2(*ctx, RMatrix::from_rows(Z4, {{1, 2}, {2, 1}}));
  check_diag(*ctx, a);
  CHECK_THROWS_AS(diagonalize_2x2(*ctx, RMatrix::from_rows(Z4, {{1, 1}, {0, 1}})), Error);
}

TEST_CASE("diagonalize contracts over small rings") {
  std::vector<Ideal> ideals{gen(zmod(4), 2), gen(zmod(8), 2), gen(zmod(9), 3), gen(zmod(6), 2)};
  auto M = matrix_ring(zmod(2), 2);
  auto P = product_ring(zmod(2), M);
  ideals.push_back(gen(P, P->pair(0, M->one())));
  ideals.push_back(Ideal::whole(M));
  for (const auto& I : ideals) {
    auto ctx = make_lift_context(I);
    auto all = candidates(I, true);
    CAPTURE(I.ring()->descriptor().dump());
    for (std::size_t k = 0; k < all.size(); k += std::max<std::size_t>(1, all.size() / 200))
      check_diag(*ctx, diagonalize_2x2(*ctx, all[k]));
  }
}

TEST_CASE("oracle lift examples") {
  auto Z4 = zmod(4);
  CHECK(oracle_lift(gen(Z4, 2), 3) == std::optional<Elem>(1));
  CHECK_FALSE(oracle_lift(gen(Z4, 2), 2));
  auto Z9 = zmod(9);
  for (Elem x = 0; x < 9; ++x) CHECK(oracle_lift(Ideal::whole(Z9), x) == std::optional<Elem>(1));
}

TEST_CASE("lift unit examples") {
  auto Z4 = zmod(4);
  auto ctx = make_lift_context(gen(Z4, 2));
  auto out = lift_unit(*ctx, 3);
  REQUIRE(out.certificate);
  CHECK(out.certificate->y == 3);
  CHECK(out.certificate->oracle_confirmed);
  CHECK_THROWS_AS(lift_unit(*ctx, 2), Error);

  auto M = matrix_ring(zmod(2), 2);
  auto P = product_ring(zmod(2), M);
  auto pc = make_lift_context(gen(P, P->pair(0, M->one())));
  const Elem x = P->pair(1, mat(*M, {1, 0, 0, 0}));
  auto px = lift_unit(*pc, x);
  REQUIRE(px.certificate);
  CHECK(P->is_unit(px.certificate->y));
  CHECK(pc->ideal.contains(P->sub(x, px.certificate->y)));
}

TEST_CASE("forced four by four path") {
  auto Z4 = zmod(4);
  auto ctx = make_lift_context(gen(Z4, 2));
  for (Elem x : {1u, 3u}) {
    auto out = lift_unit(*ctx, x, LiftOptions{true, true});
    REQUIRE(out.certificate);
    CHECK(out.certificate->m == 4);
    CHECK(out.certificate->stages.size() == 2);
    CHECK(Z4->is_unit(out.certificate->y));
    CHECK(ctx->ideal.contains(Z4->sub(x, out.certificate->y)));
  }
}

TEST_CASE("lift agrees with the oracle on the corpus") {
  for (const auto& e : default_corpus()) {
    auto b = build_entry(e);
    auto ctx = make_lift_context(b.ideal);
    CAPTURE(e.name);
    REQUIRE(ctx->exchange);
    REQUIRE(ctx->separative);
    for (Elem x = 0; x < b.ring->size(); ++x) {
      if (!is_fredholm(ctx->k_context(), x)) {
        CHECK_THROWS_AS(lift_unit(*ctx, x), Error);
        continue;
      }
      auto out = lift_unit(*ctx, x);
      CHECK(out.index_test.relaxed);
      REQUIRE(out.certificate.has_value() == oracle_lift(b.ideal, x).has_value());
      const Elem y = out.certificate->y;
      CHECK(b.ring->is_unit(y));
      CHECK(b.ideal.contains(b.ring->sub(x, y)));
      CHECK(out.certificate->oracle_confirmed);
    }
  }
}
