#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "exlift/error.hpp"
#include "exlift/ring.hpp"
#include "exlift/spec_io.hpp"

using namespace exlift;

namespace {

std::vector<Elem> all(const FiniteRing& R) {
  std::vector<Elem> v(R.size());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Brute-force ring isomorphism search over all bijections (small rings only).
bool isomorphic(const FiniteRing& A, const FiniteRing& B) {
  if (A.size() != B.size()) return false;
  std::vector<Elem> perm = all(B);
  do {
    bool ok = perm[A.one()] == B.one();
    for (Elem x = 0; ok && x < A.size(); ++x)
      for (Elem y = 0; ok && y < A.size(); ++y)
        ok = perm[A.add(x, y)] == B.add(perm[x], perm[y]) && perm[A.mul(x, y)] == B.mul(perm[x], perm[y]);
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Elem mat(const FiniteRing& M, std::initializer_list<Elem> e) {
  std::vector<Elem> v(e);
  return M.from_entries(v);
}

}  // namespace

TEST_CASE("zmod arithmetic") {
  auto R = zmod(4);
  CHECK(R->size() == 4);
  CHECK(R->add(1, 3) == 0);
  CHECK(R->mul(3, 3) == 1);
  CHECK(R->neg(1) == 3);
}

TEST_CASE("matrix ring sizes") {
  CHECK(matrix_ring(zmod(2), 2)->size() == 16);
  CHECK(triangular_ring(zmod(2), 2)->size() == 8);
  CHECK(triangular_ring(zmod(4), 2)->size() == 64);
  CHECK(product_ring(zmod(2), matrix_ring(zmod(2), 2))->size() == 32);
}

TEST_CASE("quotient of zmod(4) by {0,2} is zmod(2)") {
  auto R = zmod(4);
  const Elem two = 2;
  auto Q = quotient_ring(Ideal::closure(R, std::span<const Elem>(&two, 1)));
  CHECK(Q->size() == 2);
  CHECK(isomorphic(*Q, *zmod(2)));
  CHECK_FALSE(isomorphic(*Q, *product_ring(zmod(1), zmod(2))) == false);
}

TEST_CASE("guard rejects oversized rings") {
  CHECK_THROWS_AS(matrix_ring(zmod(16), 3), Error);
  try {
    matrix_ring(zmod(16), 3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GuardExceeded);
  }
  CHECK_THROWS_AS(zmod(0), Error);
}

TEST_CASE("ideal closure") {
  {
    auto R = zmod(4);
    const Elem g = 2;
    auto I = Ideal::closure(R, std::span<const Elem>(&g, 1));
    CHECK(I.members() == std::vector<Elem>{0, 2});
  }
  {
    auto T = triangular_ring(zmod(2), 2);
    Elem e12 = mat(*T, {0, 1, 0, 0});
    auto I = Ideal::closure(T, std::span<const Elem>(&e12, 1));
    CHECK(I.members() == std::vector<Elem>{0, e12});
  }
  {
    auto M = matrix_ring(zmod(2), 2);
    Elem e11 = mat(*M, {1, 0, 0, 0});
    auto I = Ideal::closure(M, std::span<const Elem>(&e11, 1));
    CHECK(I.is_whole());
  }
}

TEST_CASE("ideal closure is idempotent and two-sided") {
  for (auto R : {zmod(12), triangular_ring(zmod(4), 2), product_ring(zmod(2), matrix_ring(zmod(2), 2))}) {
    for (Elem g = 0; g < R->size(); g += 3) {
      auto I = Ideal::closure(R, std::span<const Elem>(&g, 1));
      auto J = Ideal::closure(R, I.members());
      CHECK(I.members() == J.members());
      for (Elem m : I.members())
        for (Elem r = 0; r < R->size(); ++r) {
          CHECK(I.contains(R->mul(r, m)));
          CHECK(I.contains(R->mul(m, r)));
        }
    }
  }
}

TEST_CASE("units") {
  CHECK(zmod(4)->units() == std::vector<Elem>{1, 3});
  CHECK(zmod(1)->units() == std::vector<Elem>{0});

  // Independent count of GL_2(F_2): integer 2x2 matrices with odd determinant.
  int gl2 = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) gl2 += ((a * d - b * c) % 2 != 0);
  REQUIRE(gl2 == 6);
  auto P = product_ring(zmod(2), matrix_ring(zmod(2), 2));
  CHECK(static_cast<int>(P->units().size()) == gl2);
  for (Elem u : P->units()) CHECK(P->components(u).first == 1);
}

TEST_CASE("units are closed under products and inverses") {
  for (auto R : {zmod(16), triangular_ring(zmod(4), 2), matrix_ring(zmod(2), 2)}) {
    std::set<Elem> U(R->units().begin(), R->units().end());
    for (Elem u : U) {
      CHECK(U.count(*R->inverse(u)));
      for (Elem v : U) CHECK(U.count(R->mul(u, v)));
    }
  }
}

TEST_CASE("idempotents") {
  CHECK(zmod(4)->idempotents() == std::vector<Elem>{0, 1});
  CHECK(zmod(6)->idempotents() == std::vector<Elem>{0, 1, 3, 4});

  // Oracle: upper triangular 0/1 matrices (a b; 0 d) with integer square
  // equal to itself mod 2.
  std::set<std::vector<Elem>> expected;
  for (Elem a = 0; a < 2; ++a)
    for (Elem b = 0; b < 2; ++b)
      for (Elem d = 0; d < 2; ++d) {
        Elem a2 = (a * a) % 2, b2 = (a * b + b * d) % 2, d2 = (d * d) % 2;
        if (a2 == a && b2 == b && d2 == d) expected.insert({a, b, 0, d});
      }
  auto T = triangular_ring(zmod(2), 2);
  std::set<std::vector<Elem>> got;
  for (Elem e : T->idempotents()) got.insert(T->entries(e));
  CHECK(got == expected);
  CHECK(got.size() == 6);
  // 0, 1, e11, e22, e11+e12, e12+e22
  CHECK(got.count({0, 0, 0, 0}));
  CHECK(got.count({1, 0, 0, 1}));
  CHECK(got.count({1, 0, 0, 0}));
  CHECK(got.count({0, 0, 0, 1}));
  CHECK(got.count({1, 1, 0, 0}));
  CHECK(got.count({0, 1, 0, 1}));
}

TEST_CASE("regular witness") {
  CHECK_FALSE(regular_witness(*zmod(4), 2).has_value());
  CHECK(regular_witness(*zmod(6), 2) == std::optional<Elem>(2));
  CHECK(regular_witness(*triangular_ring(zmod(2), 2), 0) == std::optional<Elem>(0));
}

TEST_CASE("ring axioms hold on constructed rings") {
  std::vector<RingPtr> rings = {zmod(1), zmod(6), matrix_ring(zmod(2), 2), triangular_ring(zmod(4), 2),
                                product_ring(zmod(2), zmod(3)), opposite_ring(triangular_ring(zmod(2), 2))};
  auto T = triangular_ring(zmod(4), 2);
  Elem e12 = mat(*T, {0, 1, 0, 0});
  rings.push_back(quotient_ring(Ideal::closure(T, std::span<const Elem>(&e12, 1))));
  auto M = matrix_ring(zmod(2), 2);
  rings.push_back(corner_ring(M, mat(*M, {1, 0, 0, 0})));
  for (const auto& R : rings) {
    INFO(R->descriptor().dump());
    CHECK_FALSE(check_ring_axioms(*R).has_value());
  }
}

TEST_CASE("quotient surjection preserves operations") {
  auto R = triangular_ring(zmod(4), 2);
  for (Elem g : {Elem{2}, mat(*R, {0, 1, 0, 0}), mat(*R, {2, 0, 0, 0})}) {
    auto I = Ideal::closure(R, std::span<const Elem>(&g, 1));
    auto Q = quotient_ring(I);
    CHECK(Q->size() * I.size() == R->size());
    for (Elem x = 0; x < R->size(); ++x) {
      CHECK(Q->lift(Q->project(x)) <= x);
      for (Elem y = 0; y < R->size(); ++y) {
        CHECK(Q->project(R->add(x, y)) == Q->add(Q->project(x), Q->project(y)));
        CHECK(Q->project(R->mul(x, y)) == Q->mul(Q->project(x), Q->project(y)));
      }
    }
  }
}

TEST_CASE("ring spec parsing") {
  auto spec = json::parse(R"({"type":"product","left":{"type":"zmod","n":2},
                              "right":{"type":"matrix","base":{"type":"zmod","n":2},"k":2},
                              "ideal":{"generators":[[0,[[1,0],[0,0]]]]}})");
  auto file = parse_ring_spec(spec);
  CHECK(file.ring->size() == 32);
  REQUIRE(file.ideal.has_value());
  CHECK(file.ideal->size() == 16);

  auto q = build_ring(json::parse(R"({"type":"quotient","ring":{"type":"zmod","n":4},"modulo":{"generators":[2]}})"));
  CHECK(q->size() == 2);
  CHECK(q->parse_element(3) == q->one());
  CHECK(build_ring(q->descriptor())->size() == 2);

  CHECK_THROWS_AS(build_ring(json::parse(R"({"type":"zmod","n":4,"extra":1})")), Error);
  CHECK_THROWS_AS(build_ring(json::parse(R"({"type":"zmod"})")), Error);
  CHECK_THROWS_AS(build_ring(json::parse(R"({"type":"ring","n":4})")), Error);
  CHECK_THROWS_AS(zmod(4)->parse_element(7), Error);
}

TEST_CASE("element descriptors round-trip") {
  auto P = product_ring(triangular_ring(zmod(4), 2), zmod(3));
  for (Elem x = 0; x < P->size(); ++x) CHECK(P->parse_element(P->describe(x)) == x);
}
