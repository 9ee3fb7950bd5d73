#include <doctest.h>

#include "exlift/error.hpp"
#include "exlift/matrix.hpp"

using namespace exlift;

TEST_CASE("matrix arithmetic") {
  auto R = zmod(4);
  auto id = RMatrix::identity(R, 2);
  CHECK(id * id == id);
  auto a = RMatrix::from_rows(R, {{1, 2}, {0, 1}});
  CHECK(a * a == id);  // 2+2 = 0 mod 4
  auto x = RMatrix::scalar(R, 3), y = RMatrix::scalar(R, 2);
  CHECK(direct_sum(x, y) == RMatrix::from_rows(R, {{3, 0}, {0, 2}}));
  CHECK(transpose(a) == RMatrix::from_rows(R, {{1, 0}, {2, 1}}));
  CHECK_THROWS_AS(a * RMatrix::identity(R, 3), Error);
  CHECK_THROWS_AS(a * RMatrix::identity(zmod(5), 2), Error);
}

TEST_CASE("try_inverse") {
  auto R = zmod(4);
  auto a = RMatrix::from_rows(R, {{1, 2}, {0, 1}});
  CHECK(try_inverse(a) == std::optional<RMatrix>(a));
  CHECK_FALSE(try_inverse(RMatrix(R, 2)).has_value());
  CHECK(try_inverse(RMatrix::scalar(R, 3)) == std::optional<RMatrix>(RMatrix::scalar(R, 3)));
  CHECK_FALSE(try_inverse(RMatrix::from_rows(R, {{2, 0}, {0, 1}})).has_value());
}

TEST_CASE("try_inverse agrees with products on a noncommutative ring") {
  auto T = triangular_ring(zmod(2), 2);
  int invertible = 0;
  for (Elem a = 0; a < T->size(); a += 1)
    for (Elem d = 0; d < T->size(); ++d) {
      auto m = RMatrix::from_rows(T, {{a, 1}, {0, d}});
      if (auto inv = try_inverse(m)) {
        ++invertible;
        CHECK((m * *inv).is_identity());
        CHECK((*inv * m).is_identity());
      }
    }
  CHECK(invertible > 0);
}

TEST_CASE("elementary words") {
  auto R = zmod(2);
  auto id = RMatrix::identity(R, 2);
  CHECK(apply_elem_word(id, ElemWord{2, {}}) == id);
  ElemWord w{2, {{Side::Right, 0, 1, 1}}};
  CHECK(apply_elem_word(id, w) == RMatrix::from_rows(R, {{1, 1}, {0, 1}}));

  auto Z = zmod(9);
  auto a = RMatrix::from_rows(Z, {{2, 5}, {7, 1}});
  ElemWord mixed{2, {{Side::Left, 0, 1, 4}, {Side::Right, 1, 0, 8}, {Side::Left, 1, 0, 3}, {Side::Right, 0, 1, 2}}};
  CHECK(apply_elem_word(apply_elem_word(a, mixed), inverse_word(*Z, mixed)) == a);
  // Left ops act as E*A, right ops as A*E.
  CHECK(apply_elem_word(a, ElemWord{2, {{Side::Left, 0, 1, 4}}}) == RMatrix::elementary(Z, 2, 0, 1, 4) * a);
  CHECK(apply_elem_word(a, ElemWord{2, {{Side::Right, 0, 1, 4}}}) == a * RMatrix::elementary(Z, 2, 0, 1, 4));
}

TEST_CASE("sigma expansions") {
  auto R = zmod(5);
  ElemWord s{2, {}}, si{2, {}};
  multiply_sigma(s, *R, Side::Right);
  multiply_sigma_inverse(si, *R, Side::Right);
  CHECK(evaluate(R, s) == RMatrix::from_rows(R, {{0, 1}, {4, 0}}));
  CHECK(evaluate(R, si) == RMatrix::from_rows(R, {{0, 4}, {1, 0}}));
  ElemWord l{2, {}};
  multiply_sigma(l, *R, Side::Left);
  auto a = RMatrix::from_rows(R, {{1, 2}, {3, 4}});
  CHECK(apply_elem_word(a, l) == evaluate(R, s) * a);
}

TEST_CASE("word_in_ideal") {
  auto R = zmod(4);
  const Elem two = 2;
  auto I = Ideal::closure(R, std::span<const Elem>(&two, 1));
  CHECK(word_in_ideal(ElemWord{2, {}}, I));
  CHECK(word_in_ideal(ElemWord{2, {{Side::Left, 0, 1, 2}}}, I));
  CHECK_FALSE(word_in_ideal(ElemWord{2, {{Side::Left, 0, 1, 1}}}, I));
}

TEST_CASE("words in E_n(I) do not change the image modulo I") {
  auto R = zmod(8);
  for (Elem g : {Elem{2}, Elem{4}}) {
    auto I = Ideal::closure(R, std::span<const Elem>(&g, 1));
    auto Q = quotient_ring(I);
    auto a = RMatrix::from_rows(R, {{3, 5}, {6, 7}});
    for (Elem r : I.members()) {
      ElemWord w{2, {{Side::Left, 1, 0, r}, {Side::Right, 0, 1, r}, {Side::Right, 1, 0, R->mul(r, 3)}}};
      CHECK(word_in_ideal(w, I));
      CHECK(project(apply_elem_word(a, w), Q) == project(a, Q));
    }
  }
}

TEST_CASE("word serialization round-trips") {
  auto R = triangular_ring(zmod(2), 2);
  ElemWord w{2, {{Side::Left, 0, 1, 5}, {Side::Right, 1, 0, 7}}};
  auto j = word_to_json(w, *R);
  CHECK(word_from_json(j, *R) == w);
  CHECK(word_to_json(word_from_json(j, *R), *R).dump() == j.dump());
  CHECK(j["ops"][0]["i"] == 1);
  auto bad = j;
  bad["ops"][0]["j"] = 1;
  CHECK_THROWS_AS(word_from_json(bad, *R), Error);
}

TEST_CASE("e_orbit_factor") {
  auto R = zmod(2);
  auto id = RMatrix::identity(R, 2);
  CHECK(e_orbit_factor(R, 2, id, id)->empty());
  auto a = RMatrix::from_rows(R, {{1, 1}, {0, 1}});
  auto w = e_orbit_factor(R, 2, a, id);
  REQUIRE(w.has_value());
  CHECK(w->ops == std::vector<ElemOp>{{Side::Left, 0, 1, 1}});

  // Over Z/3 left elementary multiplication preserves the determinant.
  auto Z3 = zmod(3);
  CHECK_FALSE(e_orbit_factor(Z3, 2, RMatrix::from_rows(Z3, {{2, 0}, {0, 1}}), RMatrix::identity(Z3, 2)).has_value());

  auto Z9 = zmod(9);
  auto b = RMatrix::from_rows(Z9, {{2, 3}, {1, 5}});       // det 7
  auto c = RMatrix::from_rows(Z9, {{1, 1}, {0, 7}});       // det 7
  auto f = e_orbit_factor(Z9, 2, c, b);
  REQUIRE(f.has_value());
  CHECK(apply_elem_word(b, *f) == c);
}

TEST_CASE("block views") {
  auto R = zmod(3);
  auto S = matrix_ring(R, 2);
  auto big = RMatrix::from_rows(R, {{1, 2, 0, 1}, {0, 1, 2, 2}, {1, 1, 1, 0}, {2, 0, 0, 1}});
  auto blocks = to_blocks(big, S);
  CHECK(blocks.n() == 2);
  CHECK(from_blocks(blocks) == big);
  auto sq = to_blocks(big * big, S);
  CHECK(sq == blocks * blocks);
}
