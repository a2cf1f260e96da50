#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "picx/catalog.hpp"

using namespace picx;

namespace {

DivisorClass cls(int64_t d, std::vector<int64_t> m) { return {d, std::move(m)}; }

std::set<std::pair<int64_t, std::vector<int64_t>>> as_set(
    const std::vector<DivisorClass>& v)
{
  std::set<std::pair<int64_t, std::vector<int64_t>>> out;
  for (const auto& c : v) out.insert({c.d, c.m});
  return out;
}

} // namespace

TEST_CASE("is_exceptional")
{
  CHECK(is_exceptional(cls(1, {1, 1, 0})));
  CHECK(is_exceptional(point_class(3, 3)));
  CHECK(is_exceptional(cls(1, {1, 1}))); // E0-E1-E2 on X2
  CHECK_FALSE(is_exceptional(anticanonical_class(9)));
  CHECK_FALSE(is_exceptional(cls(6, {3, 2, 2, 2, 2, 2, 2, 1})));
  // C9 pulled back plus E10 has E^2 = E.K = -1 but is not exceptional
  DivisorClass composite(3, std::vector<int64_t>(10, 1));
  composite.m[9] = -1;
  CHECK(self_intersection(composite) == -1);
  CHECK(intersect(composite, canonical_class(10)) == -1);
  CHECK_FALSE(is_exceptional(composite));

  // the near-miss of the sextic type: one multiplicity off the true class
  const auto sextics = as_set(enumerate_exceptional(8, 20));
  DivisorClass sextic(6, std::vector<int64_t>(8, 2));
  sextic.m[0] = 3;
  CHECK(sextics.count({sextic.d, sextic.m}) == 1);
  CHECK(is_exceptional(sextic));
  DivisorClass near_miss = sextic;
  near_miss.m[7] = 1;
  CHECK(sextics.count({near_miss.d, near_miss.m}) == 0);
  CHECK_FALSE(is_exceptional(near_miss));
}

TEST_CASE("rational orbit classification")
{
  CHECK(classify_rational_orbit(cls(1, {1, 0, 0})).tag ==
        RationalOrbitTag::Pencil);
  CHECK(classify_rational_orbit(cls(1, {0, 0, 0})).tag ==
        RationalOrbitTag::Line);
  const auto quad = classify_rational_orbit(cls(2, {1, 1, 0}));
  CHECK(quad.tag == RationalOrbitTag::MultiA);
  CHECK(quad.degree == 2);
  CHECK(classify_rational_orbit(cls(2, {0, 0, 0})).tag ==
        RationalOrbitTag::Conic);
  // the self-intersection-4 coincidence pair is separated by reduction
  const auto multi3 = classify_rational_orbit(cls(3, {2, 1, 0}));
  CHECK(multi3.tag == RationalOrbitTag::MultiA);
  CHECK(multi3.degree == 3);
  CHECK(self_intersection(cls(3, {2, 1, 0})) ==
        self_intersection(cls(2, {0, 0, 0})));
  CHECK(classify_rational_orbit(cls(3, {2, 0, 0})).tag ==
        RationalOrbitTag::MultiB);
  CHECK(classify_rational_orbit(point_class(4, 4)).tag ==
        RationalOrbitTag::Exceptional);
  CHECK_THROWS_AS(classify_rational_orbit(anticanonical_class(9)),
                  std::invalid_argument);
}

TEST_CASE("exceptional enumeration fixtures")
{
  CHECK(as_set(enumerate_exceptional(3, 1)) ==
        as_set({cls(0, {0, 0, -1}), cls(1, {1, 1, 0})}));
  CHECK(as_set(enumerate_exceptional(1, 0)) == as_set({cls(0, {-1})}));
  CHECK(as_set(enumerate_exceptional(6, 2)) ==
        as_set({cls(0, {0, 0, 0, 0, 0, -1}), cls(1, {1, 1, 0, 0, 0, 0}),
                cls(2, {1, 1, 1, 1, 1, 0})}));
}

TEST_CASE("del pezzo counts with permutations")
{
  const int64_t expected[] = {-1, -1, -1, 0, 10, 16, 27, 56, 240};
  for (int r = 4; r <= 8; ++r) {
    int64_t total = 0;
    for (const auto& e : enumerate_exceptional(r, 20))
      total += testing::permutation_count(e);
    CHECK(total == expected[r]);
  }
}

TEST_CASE("parallel enumeration matches the serial reference")
{
  for (int r = 3; r <= 8; ++r)
    CHECK(as_set(enumerate_exceptional(r, 12)) ==
          as_set(enumerate_exceptional_reference(r, 12)));
  for (int64_t a = 1; a <= 4; ++a)
    for (int r = 9; r <= 13; r += 2) {
      std::vector<DivisorClass> fast;
      for (const auto& c : enumerate_isolated(a, r, 12).curves)
        fast.push_back(c.cls);
      CHECK(as_set(fast) == as_set(enumerate_isolated_reference(a, r, 12)));
    }
}

TEST_CASE("every enumerated exceptional class passes the definitions")
{
  for (int r = 3; r <= 8; ++r)
    for (const auto& e : enumerate_exceptional(r, 20)) {
      CHECK(self_intersection(e) == -1);
      CHECK(intersect(e, canonical_class(r)) == -1);
      CHECK(is_exceptional(e));
      if (e.d >= 1) CHECK(noether_inequality_holds(e));
    }
}

TEST_CASE("pencil and line catalogs reduce to their representatives")
{
  for (const auto& p : enumerate_pencil_classes(5, 8)) {
    CHECK(self_intersection(p) == 0);
    CHECK(arithmetic_genus(p) == 0);
    CHECK(classify_rational_orbit(p).tag == RationalOrbitTag::Pencil);
  }
  for (const auto& l : enumerate_line_classes(5, 8)) {
    CHECK(self_intersection(l) == 1);
    CHECK(arithmetic_genus(l) == 0);
    CHECK(classify_rational_orbit(l).tag == RationalOrbitTag::Line);
  }
  CHECK_FALSE(enumerate_pencil_classes(5, 8).empty());
  CHECK_FALSE(enumerate_line_classes(5, 8).empty());
}

TEST_CASE("isolated curve fixtures")
{
  auto genus1 = enumerate_isolated(1, 9, 9);
  REQUIRE(genus1.curves.size() == 1);
  CHECK(genus1.curves[0].cls == C9_class());
  CHECK(genus1.curves[0].genus == 1);
  CHECK_FALSE(genus1.curves[0].lattice_level);
  CHECK(genus1.complete);
  CHECK(genus1.completeness_bound == 3);

  auto genus2 = enumerate_isolated(2, 12, 12);
  std::vector<DivisorClass> got;
  for (const auto& c : genus2.curves) got.push_back(c.cls);
  CHECK(as_set(got) == as_set({G1_class(), pullback_extend(G2_class(), 1),
                               pullback_extend(G3_class(), 2)}));

  auto genus4 = enumerate_isolated(4, 18, 6);
  DivisorClass hyper(6, std::vector<int64_t>(18, 1));
  hyper.m[0] = 4;
  bool found = false;
  for (const auto& c : genus4.curves) found = found || c.cls == hyper;
  CHECK(found);

  CHECK_THROWS_AS(enumerate_isolated(0, 9, 5), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_isolated(1, 2, 5), std::invalid_argument);
}

TEST_CASE("no genus >= 1 isolated curves below rank 9")
{
  for (int r = 3; r <= 8; ++r)
    for (int64_t a = 1; a <= 6; ++a) {
      auto res = enumerate_isolated(a, r, 30);
      CHECK(res.curves.empty());
      CHECK(res.complete);
    }
}

TEST_CASE("isolated curves are closed under zero padding")
{
  for (int64_t a = 1; a <= 3; ++a)
    for (int r = 9; r <= 12; ++r) {
      const auto lower = enumerate_isolated(a, r, 10).curves;
      const auto upper = as_set([&] {
        std::vector<DivisorClass> v;
        for (const auto& c : enumerate_isolated(a, r + 1, 10).curves)
          v.push_back(c.cls);
        return v;
      }());
      for (const auto& c : lower)
        CHECK(upper.count({c.cls.d, pullback_extend(c.cls, 1).m}) == 1);
    }
}

TEST_CASE("isolated curves have genus a and chi 1")
{
  for (int64_t a = 1; a <= 5; ++a)
    for (const auto& c : enumerate_isolated(a, 14, 12).curves) {
      CHECK(arithmetic_genus(c.cls) == a);
      CHECK(self_intersection(c.cls) == a - 1);
      CHECK(intersect(c.cls, canonical_class(14)) == a - 1);
      CHECK(euler_characteristic(c.cls) == 1);
      CHECK(c.lattice_level == (a >= 5));
      CHECK(classify_standardness(c.cls) == Standardness::Standard);
    }
}

TEST_CASE("generating decomposition fixtures")
{
  const auto g1 = generating_decomposition(cls(4, {1, 1, 1}));
  CHECK(g1.a == 1);
  CHECK(g1.b == 0);
  CHECK(g1.c == 0);
  CHECK(g1.alpha == std::vector<int64_t>{1});

  const auto g2 = generating_decomposition(line_class(4));
  CHECK(g2.a == 1);
  CHECK(g2.b + g2.c == 0);

  DivisorClass kc8(15, std::vector<int64_t>(8, 5));
  const auto g3 = generating_decomposition(kc8);
  CHECK(g3.a == 0);
  CHECK(g3.alpha == std::vector<int64_t>{0, 0, 0, 0, 0, 5});

  CHECK_THROWS_AS(generating_decomposition(cls(1, {1, 1, 0})),
                  std::invalid_argument);
}

TEST_CASE("generating decomposition is inverse to reconstruction")
{
  testing::Gen gen(53);
  for (int i = 0; i < 200; ++i) {
    const int r = static_cast<int>(gen.range(0, 9));
    const auto h = gen.standard(r, 4);
    CHECK(is_e_standard(h)); // non-negative coefficients give standard classes
    const auto g = generating_decomposition(h);
    CHECK(g.a >= 0);
    CHECK(g.b >= 0);
    CHECK(g.c >= 0);
    for (auto alpha : g.alpha) CHECK(alpha >= 0);
    CHECK(reconstruct_from_generating(g, r) == h);
  }
}
