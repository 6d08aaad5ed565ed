#include "doctest.h"

#include <bernoullik/error.hpp>
#include <bernoullik/ktheory.hpp>

#include "oracles.hpp"

using namespace bernoullik;

namespace {

oracle::Images to_images(const Perm& p) {
  auto img = p.images();
  return oracle::Images(img.begin(), img.end());
}

std::vector<oracle::Images> elements_of(const PermGroup& g) {
  std::vector<oracle::Images> out;
  for (const Perm& p : g.elements()) out.push_back(to_images(p));
  return out;
}

oracle::Group regular_group(const PermGroup& g) {
  auto imgs = oracle::regular_images(elements_of(g));
  return oracle::Group(imgs.begin(), imgs.end());
}

oracle::Group natural_group(const PermGroup& g) {
  auto e = elements_of(g);
  return oracle::Group(e.begin(), e.end());
}

oracle::Group trivial_group(std::size_t n) {
  oracle::Images id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<unsigned>(i);
  return {id};
}

GSetSpec trivial_set(std::size_t k) {
  PermGroup t = PermGroup::trivial();
  return GSetSpec{t, {GSetPiece{t.whole(), k}}};
}

// Labels 0 stand for the unit factor, labels in [first_line, v) for C_0(R),
// the rest for C.
GradedAb oracle_labelled(const oracle::Group& group, std::size_t n, std::size_t v, std::size_t first_line) {
  std::size_t r0 = 0, r1 = 0;
  oracle::labelling_orbits(group, n, v, [&](const oracle::Images& x, const oracle::Group& stab) {
    std::vector<unsigned> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] >= first_line) support.push_back(static_cast<unsigned>(i));
    }
    auto [a, b] = oracle::karoubi_ranks(stab, support);
    r0 += a;
    r1 += b;
  });
  return GradedAb::free(r0, r1);
}

std::vector<PermGroup> battery() {
  return {PermGroup::cyclic(2),  PermGroup::cyclic(3),     PermGroup::cyclic(4),
          PermGroup::dihedral(2), PermGroup::symmetric(3), PermGroup::dihedral(4)};
}

bool has_ab(const KReport& r, const std::string& key, const GradedAb& v) {
  for (const KTerm& t : r.terms) {
    if (t.key == key) return t.value == v;
  }
  return false;
}

}  // namespace

TEST_CASE("cantor orbit form") {
  PermGroup z2 = PermGroup::cyclic(2);
  KReport r = cantor_orbit_form(GSetSpec::regular(z2), 1);
  CHECK(r.total == GradedAb::free(5, 0));
  CHECK(r.complete);
  REQUIRE(r.terms.size() == 3);
  CHECK(has_ab(r, "F={}", GradedAb::free(2)));
  CHECK(has_ab(r, "F={0}", GradedAb::free(1)));
  CHECK(has_ab(r, "F={0,1}", GradedAb::free(2)));

  for (std::size_t k = 0; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 3; ++n) {
      std::size_t expect = 1;
      for (std::size_t i = 0; i < k; ++i) expect *= n + 1;
      CHECK(cantor_orbit_form(trivial_set(k), n).total == GradedAb::free(expect));
    }
  }

  for (const PermGroup& g : battery()) {
    CAPTURE(g.order());
    for (std::size_t n = 1; n <= 2; ++n) {
      CHECK(cantor_orbit_form(GSetSpec::regular(g), n).total ==
            GradedAb::free(oracle::crossed_product_rank(regular_group(g), g.order(), n + 1)));
    }
  }
}

TEST_CASE("cantor on a G-set with several pieces") {
  PermGroup s3 = PermGroup::symmetric(3);
  Subgroup z2 = s3.subgroup({Perm::from_cycles(3, {{0, 1}})});
  GSetSpec z{s3, {GSetPiece{z2, 1}, GSetPiece{s3.whole(), 2}}};
  RealizedGSet real = realize(z);
  REQUIRE(real.action.size == 5);
  oracle::Group act;
  for (const auto& img : real.action.images) act.insert(oracle::Images(img.begin(), img.end()));
  // The action is not faithful on the two fixed points, so count through the acting group.
  std::size_t expect = 0;
  oracle::labelling_orbits(act, 5, 2, [&](const oracle::Images& x, const oracle::Group&) {
    std::vector<oracle::Images> stab;
    for (const Perm& p : s3.elements()) {
      const auto& img = real.action.images[*s3.index_of(p)];
      oracle::Images y(5);
      for (std::size_t i = 0; i < 5; ++i) y[img[i]] = x[i];
      if (y == x) stab.push_back(to_images(p));
    }
    expect += oracle::class_sizes(oracle::Group(stab.begin(), stab.end())).size();
  });
  CHECK(cantor_orbit_form(z, 1).total == GradedAb::free(expect));
}

TEST_CASE("conjugacy form agrees with the orbit form") {
  for (const PermGroup& g : battery()) {
    for (std::size_t n = 1; n <= 3; ++n) {
      CAPTURE(g.order());
      CAPTURE(n);
      CHECK(cantor_conjugacy_form(g, n).total == cantor_orbit_form(GSetSpec::regular(g), n).total);
    }
  }
  KReport z2 = cantor_conjugacy_form(PermGroup::cyclic(2), 1);
  CHECK(z2.total == GradedAb::free(5));
  CHECK(z2.terms.size() == 3);
}

TEST_CASE("exact-stabilizer coset sets match orbits of nonempty subsets by stabilizer class") {
  for (const PermGroup& g : battery()) {
    CAPTURE(g.order());
    const auto elems = elements_of(g);
    const oracle::Group whole(elems.begin(), elems.end());
    const auto classes = g.subgroup_classes();
    std::vector<oracle::Group> reps;
    for (const auto& c : classes) {
      oracle::Group s;
      for (std::size_t i : c.representative.indices()) s.insert(elems[i]);
      reps.push_back(s);
    }
    std::vector<std::size_t> expect(classes.size(), 0);
    for (const auto& orbit : oracle::subset_orbits(regular_group(g), g.order())) {
      const std::uint64_t mask = *orbit.begin();
      if (mask == 0) continue;
      oracle::Group stab;
      for (std::size_t x = 0; x < elems.size(); ++x) {
        std::uint64_t image = 0;
        for (std::size_t y = 0; y < elems.size(); ++y) {
          if (!(mask >> y & 1)) continue;
          auto it = std::find(elems.begin(), elems.end(), oracle::compose(elems[x], elems[y]));
          image |= std::uint64_t{1} << (it - elems.begin());
        }
        if (image == mask) stab.insert(elems[x]);
      }
      std::size_t hits = 0;
      for (std::size_t ci = 0; ci < reps.size(); ++ci) {
        bool conj = false;
        for (const auto& x : whole) {
          oracle::Group c;
          for (const auto& s : stab) c.insert(oracle::compose(oracle::compose(x, s), oracle::invert(x)));
          if (c == reps[ci]) conj = true;
        }
        if (conj) {
          ++expect[ci];
          ++hits;
        }
      }
      CHECK(hits == 1);
    }
    CHECK(exact_stabilizer_counts(g) == expect);
  }
}

TEST_CASE("fibonacci form") {
  CHECK(fibonacci_like(GSetSpec::regular(PermGroup::cyclic(2))).total == GradedAb::free(5));
  CHECK(fibonacci_like(GSetSpec::regular(PermGroup::cyclic(3))).total == GradedAb::free(8));
  for (std::size_t k = 0; k <= 5; ++k) CHECK(fibonacci_like(trivial_set(k)).total == GradedAb::free(std::size_t{1} << k));
  for (const PermGroup& g : battery()) {
    KReport f = fibonacci_like(GSetSpec::regular(g));
    KReport c = cantor_orbit_form(GSetSpec::regular(g), 1);
    CHECK(f.terms == c.terms);
  }
}

TEST_CASE("circle formula") {
  for (std::size_t k = 1; k <= 6; ++k) {
    const std::size_t half = std::size_t{1} << (k - 1);
    CHECK(circle(trivial_set(k)).total == GradedAb::free(half, half));
  }
  KReport z2 = circle(GSetSpec::regular(PermGroup::cyclic(2)));
  REQUIRE(z2.terms.size() == 3);
  CHECK(z2.terms[0] == KTerm{"F={}", GradedAb::free(2, 0)});
  CHECK(z2.terms[1] == KTerm{"F={0}", GradedAb::free(0, 1)});
  CHECK(z2.terms[2] == KTerm{"F={0,1}", GradedAb::free(0, 1)});
  CHECK(z2.total == GradedAb::free(2, 2));

  for (const PermGroup& g : battery()) {
    CAPTURE(g.order());
    CHECK(circle(GSetSpec::regular(g)).total == oracle_labelled(regular_group(g), g.order(), 2, 1));
  }
}

TEST_CASE("rotation formula") {
  KReport one = rotation(trivial_set(1));
  CHECK(one.total == GradedAb::free(2, 2));
  CHECK(one.terms[1] == KTerm{"F={0}", GradedAb::free(1, 2)});
  for (std::size_t k = 1; k <= 4; ++k) {
    const std::size_t half = (std::size_t{1} << (2 * k)) / 2;
    CHECK(rotation(trivial_set(k)).total == GradedAb::free(half, half));
    CHECK(rotation(trivial_set(k)).total == oracle_labelled(trivial_group(k), k, 4, 2));
  }

  PermGroup z2 = PermGroup::cyclic(2);
  FiniteAction reg = FiniteAction::regular(z2);
  auto pairs = disjoint_pair_orbits(reg, z2.whole(), {0, 1});
  CHECK(pairs.size() == 6);

  for (const PermGroup& g : battery()) {
    CAPTURE(g.order());
    if (g.order() > 6) continue;
    CHECK(rotation(GSetSpec::regular(g)).total == oracle_labelled(regular_group(g), g.order(), 4, 2));
  }
}

TEST_CASE("wreath products against the constructed wreath group") {
  std::vector<std::pair<PermGroup, PermGroup>> pairs = {
      {PermGroup::cyclic(2), PermGroup::cyclic(2)},
      {PermGroup::cyclic(2), PermGroup::cyclic(3)},
      {PermGroup::cyclic(3), PermGroup::cyclic(2)},
      {PermGroup::cyclic(2), PermGroup::symmetric(3)},
  };
  for (const auto& [h, g] : pairs) {
    PermGroup w = PermGroup::wreath(h, g);
    std::size_t base = 1;
    for (std::size_t i = 0; i < g.order(); ++i) base *= h.order();
    CHECK(w.order() == base * g.order());
    std::vector<oracle::Images> gens;
    for (const Perm& p : w.generators()) gens.push_back(to_images(p));
    KReport r = wreath(h, g);
    CHECK(r.total == GradedAb::free(oracle::class_count(w.degree(), gens)));
    CHECK(r.total.deg1.is_zero());
  }
  CHECK(wreath(PermGroup::cyclic(2), PermGroup::cyclic(2)).total == GradedAb::free(5));
  CHECK(wreath(PermGroup::trivial(), PermGroup::symmetric(3)).total == GradedAb::free(3));
}

TEST_CASE("free group wreath products") {
  // F_1 = Z, so B = C_0(R) and A = C(S^1).
  for (const PermGroup& g : battery()) CHECK(wreath_free(1, g).total == circle(GSetSpec::regular(g)).total);

  // Trivial G agrees with the torsion-free count n^{|F|} in degree |F| mod 2.
  PermGroup t = PermGroup::trivial();
  for (std::size_t n = 1; n <= 3; ++n) {
    KReport direct = wreath_free(n, t);
    KReport symbolic = wreath_free_symbolic(n, GradedAb::free(1), {1});
    CHECK(direct.total == symbolic.total);
    CHECK(symbolic.total == GradedAb::free(1, n));
  }
  CHECK(wreath_free_symbolic(2, GradedAb::free(1, 1), {1, 2, 2}).total == GradedAb::free(1 + 4 + 4, 1 + 2));
}

TEST_CASE("finite-dimensional algebras") {
  PermGroup z2 = PermGroup::cyclic(2);
  GSetSpec finite = GSetSpec::regular(z2);
  CHECK_THROWS_AS(finite_dim(finite, {2, 3}), Error);

  GSetSpec infinite{z2, {GSetPiece{z2.trivial_subgroup(), std::nullopt}}};
  KReport single = finite_dim(infinite, {6});
  CHECK(single.complete);
  CHECK(single.total == localize(GradedAb::free(2), Supernatural::of(6)));
  CHECK(single.total.deg0.to_string() == "Z[1/6]^2");

  Truncation t{2, Window::parse("1")};
  CHECK_THROWS_AS(finite_dim(infinite, {1, 1}), Error);
  KReport ones = finite_dim(infinite, {1, 1, 1}, t);
  KReport cantor = cantor_orbit_form(infinite, 2, t);
  CHECK(ones.terms == cantor.terms);
  CHECK_FALSE(ones.complete);

  KReport k24 = finite_dim(infinite, {2, 4}, t);
  KReport n1 = cantor_orbit_form(infinite, 1, t);
  REQUIRE(k24.terms.size() == n1.terms.size());
  for (std::size_t i = 0; i < n1.terms.size(); ++i) {
    CHECK(k24.terms[i].key == n1.terms[i].key);
    CHECK(k24.terms[i].value == localize(n1.terms[i].value, Supernatural::of(2)));
  }
}

TEST_CASE("truncation only adds terms") {
  PermGroup z2 = PermGroup::cyclic(2);
  Subgroup whole = z2.whole();
  GSetSpec z{z2, {GSetPiece{z2.trivial_subgroup(), std::nullopt}, GSetPiece{whole, 1}}};
  KReport small = rotation(z, {2, Window::parse("1")});
  KReport large = rotation(z, {3, Window::parse("2")});
  for (const KTerm& t : small.terms) CHECK(has_ab(large, t.key, t.value));
  CHECK(large.terms.size() > small.terms.size());
  CHECK_FALSE(small.banner().empty());
  CHECK(small.to_text().rfind("[truncated]", 0) == 0);
  CHECK_THROWS_AS(rotation(z, {2, {}}), Error);
}

TEST_CASE("Cuntz algebras") {
  for (std::size_t n = 2; n <= 9; ++n) {
    CAPTURE(n);
    Ab expect = n % 2 == 1 ? Ab::cyclic(n) + Ab::cyclic(n) : Ab::cyclic(n / 2) + Ab::cyclic(2 * n);
    KReport plain = cuntz_z2_table(n, false);
    KReport susp = cuntz_z2_table(n, true);
    CHECK(plain.total == GradedAb{expect, {}});
    CHECK(susp.total == GradedAb{{}, expect});
    bool prime = n == 2 || n == 3 || n == 5 || n == 7;
    if (prime) {
      CHECK(localize(plain.total, Supernatural::of(n)).is_zero());
      CHECK(localize(susp.total, Supernatural::of(n)).is_zero());
    }
  }
  CHECK(cuntz_z2_table(2, false).total.deg0.to_string() == "Z/4");
  CHECK(cuntz_z2_table(6, false).total.deg0 == Ab::cyclic(3) + Ab::cyclic(12));

  PermGroup s3 = PermGroup::symmetric(3);
  CHECK(cuntz_o2(s3).total.is_zero());
  CHECK(cuntz_o_infinity(s3).total == GradedAb::free(3));

  // Trivial stabilizers: O_3 (x) (C_0(R) + C)^{(x)(m-1)} against the direct power of K(O_3).
  for (std::size_t m = 1; m <= 5; ++m) {
    KReport r = cuntz_one_plus_on(3, trivial_set(m), {});
    GradedAb power{Ab::cyclic(2), {}};
    GradedAb o3 = power;
    for (std::size_t i = 1; i < m; ++i) power = kunneth(power, o3);
    CHECK(r.terms.back().value == power);
  }

  KReport z2 = cuntz_one_plus_on(4, GSetSpec::regular(PermGroup::cyclic(2)), {});
  CHECK(z2.terms[1].value == GradedAb{Ab::cyclic(3), {}});
  CHECK(z2.terms[2].value == GradedAb{Ab::cyclic(3) + Ab::cyclic(3), {}});
  CHECK_THROWS_AS(cuntz_one_plus_on(3, GSetSpec::regular(PermGroup::cyclic(3)), {}), Error);
}

TEST_CASE("zero theorem") {
  PermGroup t = PermGroup::trivial();
  GSetSpec inf{t, {GSetPiece{t.whole(), std::nullopt}}};
  KReport four = zero_theorem(Ab::cyclic(4), {2}, 4, inf);
  CHECK(four.determined);
  CHECK(four.params.at("r") == "2");
  CHECK(four.total.is_zero());
  CHECK_FALSE(zero_theorem(Ab::free(1), {1}, 4, inf).determined);
  CHECK(zero_theorem(Ab::cyclic(2), {0}, 4, inf).params.at("r") == "1");
  CHECK_THROWS_AS(zero_theorem(Ab::cyclic(2), {0}, 4, trivial_set(3)), Error);
}

TEST_CASE("localized UCT evaluator") {
  for (const PermGroup& g : battery()) {
    GSetSpec z = GSetSpec::regular(g);
    CHECK(localized_uct(z, BSpec::free_b(1, 2), Supernatural::one()).terms == rotation(z).terms);
    CHECK(localized_uct(z, BSpec::free_b(0, 1), Supernatural::one()).terms == circle(z).terms);
    CHECK(localized_uct(z, BSpec::free_b(2, 0), Supernatural::one()).terms == cantor_orbit_form(z, 2).terms);
    CHECK(localized_uct(z, BSpec::custom_b(GradedAb::free(1, 0)), Supernatural::one()).terms ==
          fibonacci_like(z).terms);
  }

  GSetSpec z2 = GSetSpec::regular(PermGroup::cyclic(2));
  KReport rot = rotation(z2);
  KReport loc = localized_uct(z2, BSpec::free_b(1, 2), Supernatural::parse("2^inf"));
  REQUIRE(loc.terms.size() == rot.terms.size());
  for (std::size_t i = 0; i < rot.terms.size(); ++i) {
    CHECK(loc.terms[i].value == localize(rot.terms[i].value, Supernatural::parse("2^inf")));
  }
  CHECK(loc.total.deg0.to_string().find("Z[1/2]") != std::string::npos);

  // Matrix blocks through the gcd-reduced algebra.
  PermGroup z3 = PermGroup::cyclic(3);
  GSetSpec inf{z3, {GSetPiece{z3.trivial_subgroup(), std::nullopt}}};
  Truncation t{2, Window::parse("1")};
  CHECK(finite_dim(inf, {3, 6, 9}, t).terms == localized_uct(inf, BSpec::free_b(2, 0), Supernatural::of(3), t).terms);

  // Torsion in B: trivial stabilizers only.
  GradedAb o3{Ab::cyclic(2), {}};
  KReport triv = localized_uct(trivial_set(2), BSpec::custom_b(o3), Supernatural::one());
  CHECK(triv.terms.back().value == kunneth(o3, o3));
  CHECK_THROWS_AS(localized_uct(z2, BSpec::custom_b(o3), Supernatural::one()), Error);
}

TEST_CASE("orbit category colimit") {
  for (const PermGroup& g : battery()) {
    CAPTURE(g.order());
    CHECK(orbit_colim(g) == GradedAb::free(g.class_count()));
  }
  CHECK(orbit_colim(PermGroup::symmetric(4)) == GradedAb::free(5));

  // Infinite dihedral group: 1 -> Z/2 and 1 -> Z/2' by regular representations.
  Diagram d;
  d.objects = {GradedAb::free(1), GradedAb::free(2), GradedAb::free(2)};
  d.arrows.push_back({0, 1, IntMatrix{{1}, {1}}, IntMatrix(0, 0)});
  d.arrows.push_back({0, 2, IntMatrix{{1}, {1}}, IntMatrix(0, 0)});
  CHECK(colimit(d) == GradedAb::free(3));

  CHECK(coinvariants(2, {}, {IntMatrix{{0, 1}, {1, 0}}}) == Ab::free(1));
}

TEST_CASE("pushout for AF algebras") {
  const IntMatrix id1{{1}};
  const IntMatrix none(0, 0);
  GradedAb a = GradedAb::free(1);
  GradedAb b{Ab::free(2), Ab::cyclic(3)};
  IntMatrix f0{{1}, {0}};
  IntMatrix f1(1, 0);
  CHECK(af_pushout(a, b, a, Supernatural::one(), f0, f1, id1, none) == b);
  CHECK(af_pushout_torsion_free(GradedAb::free(0, 1), GradedAb::free(1), Supernatural::one()) ==
        GradedAb::free(1, 1));
  CHECK(af_pushout_torsion_free(GradedAb::free(0, 1), GradedAb::free(1), Supernatural::parse("2^inf")) ==
        GradedAb{Ab::free(1), Ab::free(1, {2})});

  // Finite G: the bottom-left corner is the G/G value and the square collapses.
  PermGroup s3 = PermGroup::symmetric(3);
  GradedAb kg = group_ktheory(s3);
  IntMatrix id3{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(af_pushout(kg, kg, kg, Supernatural::one(), id3, none, id3, none) == kg);
}
