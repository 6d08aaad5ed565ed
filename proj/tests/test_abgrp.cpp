#include "doctest.h"

#include <random>

#include <bernoullik/abgrp.hpp>
#include <bernoullik/error.hpp>

using namespace bernoullik;

namespace {

IntMatrix diag_matrix(const std::vector<Int>& d, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

void check_smith(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  CHECK(s.u * m * s.v == diag_matrix(s.diag, m.rows(), m.cols()));
  CHECK(abs(s.u.determinant()) == 1);
  CHECK(abs(s.v.determinant()) == 1);
  for (std::size_t i = 0; i + 1 < s.diag.size(); ++i) {
    CHECK(s.diag[i] >= 0);
    if (s.diag[i] == 0) CHECK(s.diag[i + 1] == 0);
    else CHECK(s.diag[i + 1] % s.diag[i] == 0);
  }
}

// |coker M| = |det M| for square M of full rank.
Int finite_order(const Ab& a) {
  Int n = 1;
  for (std::size_t i = 0; i < a.generator_count(); ++i) n *= a.generator_order(i);
  return n;
}

GradedAb g(const std::string& d0, const std::string& d1) { return {Ab::parse(d0), Ab::parse(d1)}; }

}  // namespace

TEST_CASE("smith normal form examples") {
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).diag == std::vector<Int>{1, 6});
  CHECK(smith_normal_form(IntMatrix(3, 2)).diag == std::vector<Int>{0, 0});
  CHECK(smith_normal_form(IntMatrix{{1, -1}, {-1, 1}}).diag == std::vector<Int>{1, 0});
  check_smith(IntMatrix{{2, 0}, {0, 3}});
  check_smith(IntMatrix{{1, -1}, {-1, 1}});
  check_smith(IntMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
}

TEST_CASE("smith normal form on random matrices") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = static_cast<int>(rng() % 21) - 10;
    check_smith(m);
    if (rows == cols) {
      Int det = abs(m.determinant());
      if (det != 0) CHECK(finite_order(cokernel(m)) == det);
    }
  }
}

TEST_CASE("display and parse") {
  CHECK(Ab().to_string() == "0");
  CHECK(Ab::free(5).to_string() == "Z^5");
  CHECK(Ab::cyclic(6).to_string() == "Z/2 ⊕ Z/3");
  CHECK((Ab::free(2) + Ab::free(1, {2, 3}) + Ab::cyclic(4) + Ab::cyclic(2) + Ab::cyclic(2)).to_string() ==
        "Z^2 ⊕ Z[1/6] ⊕ (Z/2)^2 ⊕ Z/4");
  for (const char* s : {"0", "Z", "Z^3 ⊕ Z[1/2]^2 ⊕ Z/3", "(Z/2)^2 ⊕ Z/9"}) CHECK(Ab::parse(Ab::parse(s).to_string()) == Ab::parse(s));
  CHECK(Ab::parse("Z + Z/6") == Ab::free(1) + Ab::cyclic(6));
  CHECK_THROWS_AS(Ab::parse("Q/Z"), Error);
  try {
    Ab::parse("Q/Z");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFinitelyGenerated);
  }
  CHECK(GradedAb::free(5).to_string() == "K_0 = Z^5; K_1 = 0");
}

TEST_CASE("supernatural numbers") {
  auto n = Supernatural::parse("2^inf,3");
  CHECK(n.support() == PrimeSet{2, 3});
  CHECK_FALSE(n.infinite_type());
  CHECK(Supernatural::parse("2^inf,5^inf").infinite_type());
  CHECK_FALSE(Supernatural::one().infinite_type());
  CHECK(Supernatural::parse("1").is_one());
  CHECK(Supernatural::parse("12").exponent(2) == 2u);
  CHECK(Supernatural::parse("2^inf").exponent(2) == std::nullopt);
  CHECK(Supernatural::parse("2^inf,3").to_string() == "2^inf,3");
}

TEST_CASE("localization") {
  auto a = GradedAb{Ab::free(1) + Ab::cyclic(6), Ab()};
  CHECK(localize(a, Supernatural::of(2)).deg0 == Ab::free(1, {2}) + Ab::cyclic(3));
  CHECK(localize(a, Supernatural::one()) == a);
  CHECK(localize(Ab::cyclic(4) + Ab::cyclic(3), Supernatural::of(6)).is_zero());
  // localize twice equals localize at the union of supports
  auto b = Ab::parse("Z^2 ⊕ Z[1/5] ⊕ Z/4 ⊕ Z/9 ⊕ Z/7");
  CHECK(localize(localize(b, Supernatural::of(2)), Supernatural::parse("3^inf")) ==
        localize(b, Supernatural::parse("2,3")));
}

TEST_CASE("kunneth") {
  CHECK(kunneth(g("Z/2", "0"), g("Z/2", "0")) == g("Z/2", "Z/2"));
  CHECK(kunneth(g("Z", "Z"), g("Z", "Z")) == g("Z^2", "Z^2"));
  auto o3 = g("Z/2", "0");
  auto torus = g("Z", "Z");
  auto lhs = kunneth(kunneth(o3, o3), o3);
  auto rhs = kunneth(kunneth(o3, torus), torus);
  CHECK(lhs == g("(Z/2)^2", "(Z/2)^2"));
  CHECK(rhs == lhs);
  CHECK(kunneth(g("Z[1/2]", "0"), g("Z/2 ⊕ Z/3", "0")) == g("Z/3", "0"));

  std::vector<GradedAb> pool{g("Z/2", "0"), g("Z/4", "Z"), g("Z", "Z/3"), g("Z[1/2]", "Z/8"), g("0", "Z/2 ⊕ Z/9"),
                             g("Z^2", "0")};
  for (const auto& x : pool)
    for (const auto& y : pool) {
      CHECK(kunneth(x, y) == kunneth(y, x));
      for (const auto& z : pool) CHECK(kunneth(kunneth(x, y), z) == kunneth(x, kunneth(y, z)));
    }
}

TEST_CASE("colimits") {
  Diagram one{{g("Z^2", "Z/3")}, {}};
  CHECK(colimit(one) == g("Z^2", "Z/3"));

  // Z --x2--> Z coequalized with identity: relations 2x = y, and y = y on the target
  Diagram two{{g("Z", "0"), g("Z", "0")}, {{0, 1, IntMatrix{{2}}, IntMatrix()}}};
  CHECK(colimit(two) == g("Z", "0"));

  // Self-map x2 on a single object: Z / (2x - x) = 0
  Diagram loop{{g("Z", "0")}, {{0, 0, IntMatrix{{2}}, IntMatrix()}}};
  CHECK(colimit(loop) == g("0", "0"));

  // Terminal object absorbs: a -> t, b -> t
  Diagram term{{g("Z^2", "0"), g("Z", "0"), g("Z^3", "Z")},
               {{0, 2, IntMatrix{{1, 0}, {0, 1}, {1, 1}}, IntMatrix(1, 0)}, {1, 2, IntMatrix{{0}, {2}, {0}}, IntMatrix(1, 0)}}};
  CHECK(colimit(term) == g("Z^3", "Z"));

  Diagram mixed{{g("Z", "0"), g("Z[1/2]", "0")}, {}};
  CHECK_THROWS_AS(colimit(mixed), Error);
  Diagram localized{{g("Z[1/2]", "0"), g("Z[1/2]", "0")}, {{0, 1, IntMatrix{{3}}, IntMatrix()}}};
  CHECK(colimit(localized) == g("Z[1/2]", "0"));
  Diagram bad{{g("Z", "0"), g("Z", "0")}, {{0, 1, IntMatrix{{1, 2}}, IntMatrix()}}};
  CHECK_THROWS_AS(colimit(bad), Error);
}

TEST_CASE("coinvariants") {
  CHECK(coinvariants(2, {}, {IntMatrix::identity(2)}) == Ab::free(2));
  CHECK(coinvariants(2, {}, {IntMatrix{{0, 1}, {1, 0}}}) == Ab::free(1));
  CHECK(coinvariants(1, {}, {IntMatrix{{-1}}}) == Ab::cyclic(2));
  CHECK(coinvariants(1, {Int(4)}, {IntMatrix{{1, 0}, {0, -1}}}) == Ab::free(1) + Ab::cyclic(2));
  CHECK_THROWS_AS(coinvariants(2, {}, {IntMatrix{{1}}}), Error);
}

TEST_CASE("pushouts") {
  auto z = g("Z", "0");
  auto zero = g("0", "0");
  CHECK(pushout(zero, g("Z^2", "0"), g("Z/3", "Z"), IntMatrix(), IntMatrix(), IntMatrix(), IntMatrix()) ==
        g("Z^2 ⊕ Z/3", "Z"));
  CHECK(pushout(z, z, z, IntMatrix{{1}}, IntMatrix(), IntMatrix{{1}}, IntMatrix()) == z);
  CHECK(pushout(z, z, z, IntMatrix{{1}}, IntMatrix(), IntMatrix{{2}}, IntMatrix()) == z);
  CHECK(pushout(z, z, z, IntMatrix{{2}}, IntMatrix(), IntMatrix{{2}}, IntMatrix()) == g("Z ⊕ Z/2", "0"));
}

TEST_CASE("unit powers") {
  CHECK(unit_power_vanishes(Ab::cyclic(4), {Int(2)}, 3) == 2u);
  CHECK(unit_power_vanishes(Ab::free(1), {Int(1)}, 6) == std::nullopt);
  CHECK(unit_power_vanishes(Ab::cyclic(2), {Int(0)}, 3) == 1u);
  CHECK(unit_power_vanishes(Ab::cyclic(8), {Int(2)}, 2) == std::nullopt);
  CHECK(unit_power_vanishes(Ab::cyclic(8), {Int(2)}, 3) == 3u);
  // Z/2 + Z/3 with unit (1,1): components on (2,3) cross terms vanish, but
  // the diagonal (2,2) and (3,3) components survive forever.
  CHECK(unit_power_vanishes(Ab::cyclic(6), {Int(1), Int(1)}, 4) == std::nullopt);
}
