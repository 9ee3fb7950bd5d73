#include <doctest.h>

#include "exlift/error.hpp"
#include "exlift/exchange.hpp"

using namespace exlift;

namespace {

Elem mat(const FiniteRing& M, std::initializer_list<Elem> e) {
  std::vector<Elem> v(e);
  return M.from_entries(v);
}

Ideal gen(const RingPtr& R, Elem g) { return Ideal::closure(R, std::span<const Elem>(&g, 1)); }

void check_unital(const FiniteRing& R, Elem a, const ExchangeWitness& w) {
  CHECK(R.is_idempotent(w.e));
  CHECK(R.mul(a, w.r) == w.e);
  CHECK(R.mul(R.sub(R.one(), a), w.s) == R.sub(R.one(), w.e));
}

void check_ideal(const Ideal& I, Elem x, const ExchangeWitness& w) {
  const auto& R = *I.ring();
  CHECK(I.contains(w.e));
  CHECK(I.contains(w.r));
  CHECK(I.contains(w.s));
  CHECK(R.is_idempotent(w.e));
  CHECK(R.mul(x, w.r) == w.e);
  CHECK(R.sub(R.add(x, w.s), R.mul(x, w.s)) == w.e);
}

}  // namespace

TEST_CASE("unital witnesses") {
  CHECK(exchange_witness_unital(*zmod(2), 1) == std::optional(ExchangeWitness{1, 1, 0}));
  CHECK(exchange_witness_unital(*zmod(4), 2) == std::optional(ExchangeWitness{0, 0, 3}));
  CHECK(exchange_witness_unital(*zmod(6), 3) == std::optional(ExchangeWitness{3, 1, 1}));
}

TEST_CASE("unital witnesses are lexicographically least") {
  // Oracle: scan all triples in lexicographic order.
  for (auto R : {zmod(12), triangular_ring(zmod(2), 2)}) {
    for (Elem a = 0; a < R->size(); ++a) {
      std::optional<ExchangeWitness> best;
      for (Elem e = 0; e < R->size() && !best; ++e)
        for (Elem r = 0; r < R->size() && !best; ++r)
          for (Elem s = 0; s < R->size() && !best; ++s)
            if (R->mul(e, e) == e && R->mul(a, r) == e &&
                R->mul(R->sub(R->one(), a), s) == R->sub(R->one(), e))
              best = ExchangeWitness{e, r, s};
      auto w = exchange_witness_unital(*R, a);
      CHECK(w == best);
      if (w) check_unital(*R, a, *w);
    }
  }
}

TEST_CASE("ideal witnesses") {
  auto Z4 = zmod(4);
  auto I = gen(Z4, 2);
  CHECK(exchange_witness_ideal(I, 2) == std::optional(ExchangeWitness{0, 0, 2}));
  CHECK(exchange_witness_ideal(I, 0) == std::optional(ExchangeWitness{0, 0, 0}));
  CHECK_THROWS_AS(exchange_witness_ideal(I, 1), Error);

  auto T = triangular_ring(zmod(2), 2);
  Elem e12 = mat(*T, {0, 1, 0, 0});
  auto J = gen(T, e12);
  auto w = exchange_witness_ideal(J, e12);
  REQUIRE(w);
  CHECK(*w == ExchangeWitness{0, 0, e12});
  check_ideal(J, e12, *w);
}

TEST_CASE("exchange ring and ideal decisions") {
  CHECK(is_exchange_ring(*zmod(4)));
  CHECK(is_exchange_ring(*zmod(2)));
  CHECK(is_exchange_ideal(gen(zmod(4), 2)));
  for (auto R : {zmod(1), zmod(6), zmod(8), triangular_ring(zmod(4), 2), matrix_ring(zmod(2), 2),
                 product_ring(zmod(2), zmod(3))})
    CHECK(is_exchange_ring(*R));
}

TEST_CASE("intrinsic and embedded forms agree") {
  std::vector<Ideal> ideals;
  for (auto R : {zmod(6), zmod(8), zmod(9), triangular_ring(zmod(2), 2), triangular_ring(zmod(4), 2)})
    for (Elem g = 0; g < R->size(); ++g) ideals.push_back(gen(R, g));
  for (const auto& I : ideals) {
    CHECK(is_exchange_ideal(I) == is_exchange_ideal_embedded(I));
    for (Elem x : I.members()) {
      auto w = exchange_witness_ideal(I, x);
      REQUIRE(w);
      check_ideal(I, x, *w);
      auto v = exchange_witness_embedded(I, x);
      REQUIRE(v);
      const auto& R = *I.ring();
      CHECK(R.mul(x, v->r) == v->e);
      CHECK(R.mul(R.sub(R.one(), x), v->s) == R.sub(R.one(), v->e));
    }
  }
}

TEST_CASE("lift_idempotent") {
  auto Z4 = zmod(4);
  auto Q = quotient_ring(gen(Z4, 2));
  CHECK(lift_idempotent(*Q, Q->project(1)) == std::optional<Elem>(1));
  CHECK(lift_idempotent(*Q, Q->project(0)) == std::optional<Elem>(0));

  auto T = triangular_ring(zmod(2), 2);
  Elem e11 = mat(*T, {1, 0, 0, 0});
  auto QT = quotient_ring(gen(T, mat(*T, {0, 1, 0, 0})));
  CHECK(lift_idempotent(*QT, QT->project(e11)) == std::optional<Elem>(e11));

  auto Z8 = zmod(8);
  auto Q8 = quotient_ring(gen(Z8, 4));
  CHECK_THROWS_AS(lift_idempotent(*Q8, Q8->project(2)), Error);
  CHECK_THROWS_AS(lift_idempotent(*Z8, 1), Error);
}

TEST_CASE("idempotents lift modulo every ideal of small rings") {
  for (auto R : {zmod(12), triangular_ring(zmod(4), 2)})
    for (Elem g = 0; g < R->size(); g += 5) {
      auto Q = quotient_ring(gen(R, g));
      for (Elem ebar : Q->idempotents()) {
        auto e = lift_idempotent(*Q, ebar);
        REQUIRE(e);
        CHECK(R->is_idempotent(*e));
        CHECK(Q->project(*e) == ebar);
      }
    }
}

TEST_CASE("corner ideals stay exchange") {
  auto T = triangular_ring(zmod(4), 2);
  for (Elem g : {Elem{2}, mat(*T, {0, 1, 0, 0}), mat(*T, {2, 0, 0, 0})}) {
    auto I = gen(T, g);
    REQUIRE(is_exchange_ideal(I));
    for (Elem e : T->idempotents()) {
      auto C = corner_ring(T, e);
      auto eIe = corner_ideal(C, I);
      CHECK(is_exchange_ideal(eIe));
      for (Elem c : eIe.members()) CHECK(I.contains(C->embed(c)));
    }
  }
}

TEST_CASE("matrix ideals stay exchange") {
  for (auto [R, g] : {std::pair{zmod(4), Elem{2}}, std::pair{zmod(2), Elem{1}}, std::pair{zmod(6), Elem{3}}}) {
    auto I = gen(R, g);
    auto S = matrix_ring(R, 2);
    auto M2I = matrix_ideal(S, I);
    CHECK(M2I.size() == I.size() * I.size() * I.size() * I.size());
    CHECK(is_exchange_ideal(M2I));
  }
  auto T = triangular_ring(zmod(2), 2);
  auto S = matrix_ring(T, 2);
  auto M2I = matrix_ideal(S, gen(T, mat(*T, {0, 1, 0, 0})));
  CHECK(M2I.size() == 16);
  CHECK(is_exchange_ideal(M2I));
}
