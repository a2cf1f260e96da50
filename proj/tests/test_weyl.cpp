#include <doctest.h>

#include <map>
#include <set>

#include "helpers.hpp"
#include "picx/weyl.hpp"

using namespace picx;

namespace {

DivisorClass cls(int64_t d, std::vector<int64_t> m) { return {d, std::move(m)}; }

} // namespace

TEST_CASE("reflection formula")
{
  CHECK(reflect(cls(5, {2, 2, 2}), 0) == cls(4, {1, 1, 1}));
  CHECK(reflect(cls(1, {0, 0, 0}), 0) == cls(2, {1, 1, 1}));
  const auto k3 = canonical_class(3);
  for (int idx = 0; idx < 3; ++idx) CHECK(reflect(k3, idx) == k3);
  CHECK_THROWS_AS(reflect(cls(1, {1, 1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(reflect(cls(1, {1, 1}), 2), std::invalid_argument);
}

TEST_CASE("reflection preserves the pairing, chi and genus")
{
  testing::Gen gen(3);
  for (int i = 0; i < 200; ++i) {
    const int r = static_cast<int>(gen.range(3, 8));
    const auto a = gen.divisor(r, -6, 9);
    const auto b = gen.divisor(r, -6, 9);
    const int idx = static_cast<int>(gen.range(0, r - 1));
    CHECK(intersect(reflect(a, idx), reflect(b, idx)) == intersect(a, b));
    CHECK(reflect(reflect(a, idx), idx) == a); // involution
    CHECK(euler_characteristic(reflect(a, idx)) == euler_characteristic(a));
    CHECK(arithmetic_genus(reflect(a, idx)) == arithmetic_genus(a));
  }
}

TEST_CASE("roots")
{
  for (int idx = 0; idx < 5; ++idx) {
    const auto rho = root_class(idx, 5);
    CHECK(self_intersection(rho) == -2);
    CHECK(intersect(rho, canonical_class(5)) == 0);
  }
}

TEST_CASE("reduce fixtures")
{
  auto r1 = reduce(cls(5, {2, 2, 2}));
  CHECK(r1.canonical == cls(4, {1, 1, 1}));
  CHECK(r1.word == WeylWord{0});
  CHECK(r1.standardness == Standardness::Standard);

  auto r2 = reduce(cls(4, {1, 1, 1}));
  CHECK(r2.canonical == cls(4, {1, 1, 1}));
  CHECK(r2.word.empty());

  auto r3 = reduce(cls(1, {3, -1, -1}));
  CHECK(r3.canonical == cls(1, {3, -1, -1}));
  CHECK(r3.standardness == Standardness::Neither);
}

TEST_CASE("word is a faithful certificate")
{
  testing::Gen gen(29);
  for (int i = 0; i < 300; ++i) {
    const int r = static_cast<int>(gen.range(3, 9));
    const auto h = gen.divisor(r, -8, 12);
    const auto res = reduce(h);
    CHECK(apply_word(h, res.word) == res.canonical);
    // generators are involutions: word followed by its reverse is identity
    WeylWord back(res.word.rbegin(), res.word.rend());
    CHECK(apply_word(res.canonical, back) == h);
    // idempotence
    CHECK(reduce(res.canonical).canonical == res.canonical);
  }
}

TEST_CASE("canonical form is an orbit invariant for standard classes")
{
  testing::Gen gen(31);
  for (int i = 0; i < 200; ++i) {
    const int r = static_cast<int>(gen.range(3, 8));
    const auto h = gen.standard(r, 3);
    const auto base = reduce(h).canonical;
    const auto moved = apply_word(h, gen.word(r, 30));
    CHECK(reduce(moved).canonical == base);
  }
}

TEST_CASE("standardness classification fixtures")
{
  CHECK(classify_standardness(cls(5, {2, 2, 2})) == Standardness::Standard);
  DivisorClass kc8(9, std::vector<int64_t>(8, 3));
  CHECK(classify_standardness(kc8) == Standardness::Standard);
  CHECK(classify_standardness(point_class(6, 6)) == Standardness::SemiStandard);
}

TEST_CASE("standardness agrees with intrinsic pairing test at small rank")
{
  testing::Gen gen(37);
  for (int i = 0; i < 400; ++i) {
    const int r = static_cast<int>(gen.range(3, 6));
    DivisorClass h = i % 3 == 0 ? gen.divisor(r, -3, 6)
                                : apply_word(i % 3 == 1 ? gen.standard(r, 2)
                                                        : gen.semistandard(r, 2),
                                             gen.word(r, 12));
    const auto got = classify_standardness(h);
    const bool std_brute = testing::brute_standard(h);
    const bool semi_brute = testing::brute_semistandard(h);
    CHECK((got == Standardness::Standard) == std_brute);
    CHECK((got != Standardness::Neither) == semi_brute);
  }
}

TEST_CASE("orthogonal decomposition fixtures")
{
  // C8 pulled back to rank 9 plus 2E9
  DivisorClass h(3, std::vector<int64_t>(9, 1));
  h.m[8] = -2;
  auto dec = semistandard_decompose(h);
  DivisorClass c8_pull(3, std::vector<int64_t>(9, 1));
  c8_pull.m[8] = 0;
  CHECK(dec.standard_part == c8_pull);
  REQUIRE(dec.pieces.size() == 1);
  CHECK(dec.pieces[0].first == 2);
  CHECK(dec.pieces[0].second == point_class(9, 9));

  auto trivial = semistandard_decompose(cls(4, {1, 1, 1}));
  CHECK(trivial.standard_part == cls(4, {1, 1, 1}));
  CHECK(trivial.pieces.empty());

  // unextendable branch
  auto branch2 = semistandard_decompose(cls(3, {2, 2, -1}));
  CHECK(branch2.standard_part == cls(2, {1, 1, 0}));
  REQUIRE(branch2.pieces.size() == 2);
  CHECK(branch2.pieces[0] == std::pair<int64_t, DivisorClass>{1, cls(1, {1, 1, 0})});
  CHECK(branch2.pieces[1] == std::pair<int64_t, DivisorClass>{1, cls(0, {0, 0, -1})});

  CHECK_THROWS_AS(semistandard_decompose(cls(1, {3, -1, -1})),
                  std::invalid_argument);
}

TEST_CASE("decomposition is orthogonal, exceptional, and reconstructs")
{
  testing::Gen gen(41);
  for (int i = 0; i < 300; ++i) {
    const int r = static_cast<int>(gen.range(2, 9));
    DivisorClass h = gen.semistandard(r, 3);
    if (classify_standardness(h) == Standardness::Neither) continue;
    h = reduce(h).canonical;
    const auto dec = semistandard_decompose(h);
    DivisorClass sum = dec.standard_part;
    const auto sorted_part =
        DivisorClass(dec.standard_part.d,
                     sorted_multiplicities(dec.standard_part));
    CHECK(is_e_standard(sorted_part));
    for (const auto& [n, f] : dec.pieces) {
      CHECK(n > 0);
      CHECK(self_intersection(f) == -1);
      CHECK(intersect(f, canonical_class(r)) == -1);
      CHECK(intersect(dec.standard_part, f) == 0);
      sum = sum + n * f;
    }
    for (size_t a = 0; a < dec.pieces.size(); ++a)
      for (size_t b = a + 1; b < dec.pieces.size(); ++b)
        CHECK(intersect(dec.pieces[a].second, dec.pieces[b].second) == 0);
    CHECK(sum == h);
  }
}

TEST_CASE("decomposition is stable under relabeling the points")
{
  testing::Gen gen(43);
  for (int i = 0; i < 150; ++i) {
    const int r = static_cast<int>(gen.range(3, 8));
    DivisorClass h = gen.semistandard(r, 3);
    if (classify_standardness(h) == Standardness::Neither) continue;
    h = reduce(h).canonical;
    // random permutation of the points
    std::vector<int> perm(static_cast<size_t>(r));
    for (int j = 0; j < r; ++j) perm[static_cast<size_t>(j)] = j;
    for (int j = r - 1; j > 0; --j)
      std::swap(perm[static_cast<size_t>(j)],
                perm[static_cast<size_t>(gen.range(0, j))]);
    auto apply_perm = [&](const DivisorClass& c) {
      DivisorClass out = c;
      for (int j = 0; j < r; ++j)
        out.m[static_cast<size_t>(perm[static_cast<size_t>(j)])] =
            c.m[static_cast<size_t>(j)];
      return out;
    };
    const auto dec = semistandard_decompose(h);
    const auto dec2 = semistandard_decompose(apply_perm(h));
    auto key = [](const std::pair<int64_t, DivisorClass>& piece) {
      return std::make_tuple(piece.first, piece.second.d, piece.second.m);
    };
    std::multiset<std::tuple<int64_t, int64_t, std::vector<int64_t>>> a, b;
    for (const auto& piece : dec.pieces)
      a.insert(key({piece.first, apply_perm(piece.second)}));
    for (const auto& piece : dec2.pieces) b.insert(key(piece));
    CHECK(a == b);
    CHECK(apply_perm(dec.standard_part) == dec2.standard_part);
  }
}

TEST_CASE("orbit pairing minimum")
{
  const DivisorClass h(4, {1, 1, 1, 1});
  CHECK(orbit_pairing_minimum(h, point_class(4, 4)) == 1);
  CHECK(orbit_pairing_minimum(h, h) == self_intersection(h));
  CHECK_THROWS_AS(orbit_pairing_minimum(cls(1, {2, 0, 0}), h),
                  std::invalid_argument);

  // the minimum over all exceptional classes is the last multiplicity
  testing::Gen gen47(49);
  for (int i = 0; i < 40; ++i) {
    const int r = static_cast<int>(gen47.range(3, 8));
    const auto std_h = gen47.standard(r, 3);
    CHECK(orbit_pairing_minimum(std_h, point_class(r, r)) == std_h.m.back());
  }

  // exhaustive cross-check on the full finite orbit
  testing::Gen gen(47);
  for (int i = 0; i < 20; ++i) {
    const int r = static_cast<int>(gen.range(4, 5));
    const auto std_h = gen.standard(r, 2);
    const auto d = apply_word(gen.semistandard(r, 2), gen.word(r, 10));
    if (classify_standardness(d) == Standardness::Neither) continue;
    const int64_t fast = orbit_pairing_minimum(std_h, d);
    int64_t best = INT64_MAX;
    for (const auto& img : orbit_closure(d))
      best = std::min(best, intersect(std_h, img));
    CHECK(fast == best);
  }
}

TEST_CASE("noether inequality contract")
{
  CHECK(noether_inequality_holds(cls(2, {1, 1, 1, 1, 1})));
  CHECK(noether_inequality_holds(cls(1, {1, 1, 0})));
  CHECK_THROWS_AS(noether_inequality_holds(cls(0, {0, 0, -1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(noether_inequality_holds(cls(1, {0, 1, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(noether_inequality_holds(cls(2, {1, 1})),
                  std::invalid_argument);
}

TEST_CASE("orbit closure")
{
  CHECK(orbit_closure(point_class(4, 4)).size() == 10);  // 10 lines on X4
  CHECK(orbit_closure(point_class(6, 6)).size() == 27);  // 27 lines on X6
  CHECK_THROWS_AS(orbit_closure(point_class(7, 7)), std::invalid_argument);
  // the canonical class is a fixed point
  CHECK(orbit_closure(canonical_class(5)).size() == 1);
}
