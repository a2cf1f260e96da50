#ifndef PICX_TEST_HELPERS_HPP
#define PICX_TEST_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "picx/catalog.hpp"
#include "picx/divisor.hpp"
#include "picx/weyl.hpp"

namespace picx::testing {

// Deterministic generators for property tests.
struct Gen {
  std::mt19937_64 eng;
  explicit Gen(std::uint64_t seed) : eng(seed) {}

  int64_t range(int64_t lo, int64_t hi) // inclusive
  {
    return lo + static_cast<int64_t>(eng() % static_cast<uint64_t>(hi - lo + 1));
  }

  DivisorClass divisor(int r, int64_t lo, int64_t hi)
  {
    DivisorClass h(range(lo, hi), std::vector<int64_t>(r, 0));
    for (auto& m : h.m) m = range(lo, hi);
    return h;
  }

  // random E-standard class built from non-negative generating coefficients
  DivisorClass standard(int r, int64_t coeff_max)
  {
    GeneratingDecomposition g;
    g.a = range(0, coeff_max);
    if (r >= 1) g.b = range(0, coeff_max);
    if (r >= 2) g.c = range(0, coeff_max);
    if (r >= 3) {
      g.alpha.resize(static_cast<size_t>(r) - 2);
      for (auto& a : g.alpha) a = range(0, coeff_max);
    }
    return reconstruct_from_generating(g, r);
  }

  // random class that reduces to (semi-)standard form
  DivisorClass semistandard(int r, int64_t coeff_max)
  {
    DivisorClass h = standard(r, coeff_max);
    // push some multiples of basis exceptional classes on top
    const int pieces = static_cast<int>(range(0, std::min(2, r)));
    for (int i = 0; i < pieces; ++i) {
      const int slot = static_cast<int>(range(1, r));
      h = h + range(1, 3) * point_class(slot, r);
    }
    return h;
  }

  WeylWord word(int r, int max_len)
  {
    WeylWord w(static_cast<size_t>(range(0, max_len)));
    for (auto& idx : w) idx = static_cast<int>(range(r >= 3 ? 0 : 1, r - 1));
    return w;
  }
};

// Orbit-free standardness checks: pair a sorted copy of the class against
// the complete sorted lists of exceptional / line / pencil classes.  With
// both sides sorted non-increasingly the aligned pairing is the orbit
// minimum, so these reproduce the intrinsic definitions at small rank.
inline int64_t min_orbit_pairing(const DivisorClass& h_sorted,
                                 const DivisorClass& type_sorted)
{
  return intersect(h_sorted, type_sorted);
}

inline bool brute_standard(const DivisorClass& h, int64_t d_max = 12)
{
  DivisorClass s(h.d, sorted_multiplicities(h));
  for (const auto& e : enumerate_exceptional(h.rank(), d_max))
    if (min_orbit_pairing(s, e) < 0) return false;
  return true;
}

inline bool brute_semistandard(const DivisorClass& h, int64_t d_max = 12)
{
  DivisorClass s(h.d, sorted_multiplicities(h));
  for (const auto& l : enumerate_line_classes(h.rank(), d_max))
    if (min_orbit_pairing(s, l) < 0) return false;
  for (const auto& p : enumerate_pencil_classes(h.rank(), d_max))
    if (min_orbit_pairing(s, p) < 0) return false;
  return true;
}

// number of distinct permutations of the multiplicity vector
inline int64_t permutation_count(const DivisorClass& h)
{
  std::vector<int64_t> m = sorted_multiplicities(h);
  int64_t total = 1;
  // n! / prod(группы!) computed incrementally to stay in range
  int64_t n = 0;
  int64_t run = 0;
  int64_t prev = 0;
  for (size_t i = 0; i < m.size(); ++i) {
    ++n;
    total = total * n;
    if (i > 0 && m[i] == prev)
      ++run;
    else
      run = 1;
    prev = m[i];
    total /= run;
  }
  return total;
}

} // namespace picx::testing

#endif
