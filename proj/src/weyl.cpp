#include "picx/weyl.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

#include "picx/overflow.hpp"

namespace picx {

const char* to_string(Standardness s)
{
  switch (s) {
    case Standardness::Standard: return "standard";
    case Standardness::SemiStandard: return "semi-standard";
    case Standardness::Neither: return "neither";
  }
  return "?";
}

DivisorClass root_class(int index, int r)
{
  if (index == 0) {
    if (r < 3)
      throw std::invalid_argument("root 0 needs rank >= 3");
    DivisorClass c(1, std::vector<int64_t>(r, 0));
    c.m[0] = c.m[1] = c.m[2] = 1;
    return c;
  }
  if (index < 0 || index >= r)
    throw std::invalid_argument("root index out of range for rank " +
                                std::to_string(r));
  DivisorClass c(0, std::vector<int64_t>(r, 0));
  c.m[index - 1] = -1;
  c.m[index] = 1;
  return c;
}

DivisorClass reflect(const DivisorClass& h, int root_index)
{
  const int r = h.rank();
  if (root_index == 0) {
    if (r < 3) throw std::invalid_argument("root 0 needs rank >= 3");
    const int64_t t =
        checked_sub(checked_sub(checked_sub(h.d, h.m[0]), h.m[1]), h.m[2]);
    DivisorClass out = h;
    out.d = checked_add(h.d, t);
    out.m[0] = checked_add(h.m[0], t);
    out.m[1] = checked_add(h.m[1], t);
    out.m[2] = checked_add(h.m[2], t);
    return out;
  }
  if (root_index < 0 || root_index >= r)
    throw std::invalid_argument("root index out of range for rank " +
                                std::to_string(r));
  DivisorClass out = h;
  std::swap(out.m[root_index - 1], out.m[root_index]);
  return out;
}

DivisorClass apply_word(const DivisorClass& h, const WeylWord& word)
{
  DivisorClass cur = h;
  for (int idx : word) cur = reflect(cur, idx);
  return cur;
}

namespace {

// Bubble sort to non-increasing order, recording each swap of positions
// (i-1, i) as the generator i.  Strict comparisons keep ties stable.
void sort_recording(DivisorClass& h, WeylWord& word)
{
  const int r = h.rank();
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i = 0; i + 1 < r; ++i) {
      if (h.m[i] < h.m[i + 1]) {
        std::swap(h.m[i], h.m[i + 1]);
        word.push_back(i + 1);
        moved = true;
      }
    }
  }
}

bool sorted_non_increasing(const std::vector<int64_t>& m)
{
  for (size_t i = 0; i + 1 < m.size(); ++i)
    if (m[i] < m[i + 1]) return false;
  return true;
}

// Classification of a *sorted, reduction-terminal* vector.
Standardness classify_canonical(const DivisorClass& c)
{
  const int r = c.rank();
  if (c.d < 0) return Standardness::Neither;
  if (r >= 1 && c.d < c.m[0]) return Standardness::Neither;
  // semi-standard established (for r >= 3 the terminal condition gives
  // d >= m1+m2+m3)
  bool standard = r == 0 || c.m[r - 1] >= 0;
  if (standard && r >= 2 && c.d < checked_add(c.m[0], c.m[1]))
    standard = false;
  return standard ? Standardness::Standard : Standardness::SemiStandard;
}

} // namespace

ReductionResult reduce(const DivisorClass& h)
{
  ReductionResult res;
  res.canonical = h;
  sort_recording(res.canonical, res.word);
  if (h.rank() >= 3) {
    while (res.canonical.d >= 0) {
      const int64_t s = checked_add(
          checked_add(res.canonical.m[0], res.canonical.m[1]),
          res.canonical.m[2]);
      if (res.canonical.d >= s) break;
      res.canonical = reflect(res.canonical, 0);
      res.word.push_back(0);
      sort_recording(res.canonical, res.word);
    }
  }
  res.standardness = classify_canonical(res.canonical);
  return res;
}

Standardness classify_standardness(const DivisorClass& h)
{
  return reduce(h).standardness;
}

bool is_e_standard(const DivisorClass& h)
{
  const int r = h.rank();
  if (!sorted_non_increasing(h.m)) return false;
  if (h.d < 0) return false;
  if (r >= 1 && (h.m[r - 1] < 0 || h.d < h.m[0])) return false;
  if (r >= 2 && h.d < h.m[0] + h.m[1]) return false;
  if (r >= 3 && h.d < h.m[0] + h.m[1] + h.m[2]) return false;
  return true;
}

bool is_e_semistandard(const DivisorClass& h)
{
  const int r = h.rank();
  if (!sorted_non_increasing(h.m)) return false;
  if (h.d < 0) return false;
  if (r >= 1 && h.d < h.m[0]) return false;
  if (r >= 3 && h.d < h.m[0] + h.m[1] + h.m[2]) return false;
  return true;
}

OrthogonalDecomposition semistandard_decompose(const DivisorClass& h)
{
  const int r = h.rank();
  // sort, remembering where each slot came from
  std::vector<int> order(r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return h.m[a] > h.m[b]; });
  std::vector<int64_t> s(r);
  for (int i = 0; i < r; ++i) s[i] = h.m[order[i]];

  DivisorClass sorted(h.d, s);
  if (!is_e_semistandard(sorted))
    throw std::invalid_argument(
        "semistandard_decompose: class is not E-semi-standard after sorting");

  OrthogonalDecomposition out;
  out.standard_part = DivisorClass(h.d, std::vector<int64_t>(r, 0));

  const bool unextendable = r >= 2 && h.d < checked_add(s[0], s[1]);
  int first_negative = 0;
  while (first_negative < r && s[first_negative] >= 0) ++first_negative;

  if (!unextendable) {
    for (int i = 0; i < first_negative; ++i)
      out.standard_part.m[order[i]] = s[i];
  } else {
    // s[0], s[1] >= 0 and s[2] < 0 here: d >= m1 forces m2 >= 0 when
    // d < m1+m2, and d >= m1+m2+m3 forces m3 < 0.
    out.standard_part.d = checked_sub(checked_sub(checked_mul(2, h.d), s[0]), s[1]);
    out.standard_part.m[order[0]] = checked_sub(h.d, s[1]);
    out.standard_part.m[order[1]] = checked_sub(h.d, s[0]);
    DivisorClass f(1, std::vector<int64_t>(r, 0));
    f.m[order[0]] = 1;
    f.m[order[1]] = 1;
    out.pieces.emplace_back(checked_sub(checked_add(s[0], s[1]), h.d), f);
  }
  for (int i = first_negative; i < r; ++i) {
    DivisorClass e(0, std::vector<int64_t>(r, 0));
    e.m[order[i]] = -1;
    out.pieces.emplace_back(-s[i], e);
  }
  return out;
}

int64_t orbit_pairing_minimum(const DivisorClass& h, const DivisorClass& d)
{
  if (!is_e_standard(h))
    throw std::invalid_argument("orbit_pairing_minimum: H must be E-standard");
  ReductionResult rd = reduce(d);
  if (rd.standardness == Standardness::Neither)
    throw std::invalid_argument(
        "orbit_pairing_minimum: D is not semi-standard in any configuration");
  return intersect(h, rd.canonical);
}

bool noether_inequality_holds(const DivisorClass& e)
{
  const int r = e.rank();
  if (r < 3) throw std::invalid_argument("noether: need rank >= 3");
  if (!sorted_non_increasing(e.m))
    throw std::invalid_argument("noether: multiplicities not sorted");
  if (e.d < 0 || e.m[r - 1] < 0)
    throw std::invalid_argument("noether: entries must be non-negative");
  if (self_intersection(e) != -1 ||
      intersect(e, canonical_class(r)) != -1)
    throw std::invalid_argument("noether: class must satisfy E^2 = E.K = -1");
  return e.d < e.m[0] + e.m[1] + e.m[2];
}

std::vector<DivisorClass> orbit_closure(const DivisorClass& d)
{
  const int r = d.rank();
  if (r > 6)
    throw std::invalid_argument(
        "orbit_closure: refused for rank > 6 (orbit too large)");
  std::set<std::pair<int64_t, std::vector<int64_t>>> seen;
  std::deque<DivisorClass> frontier{d};
  seen.insert({d.d, d.m});
  std::vector<DivisorClass> orbit{d};
  const int first_root = r >= 3 ? 0 : 1;
  while (!frontier.empty()) {
    DivisorClass cur = frontier.front();
    frontier.pop_front();
    for (int idx = first_root; idx < r; ++idx) {
      DivisorClass next = reflect(cur, idx);
      if (seen.insert({next.d, next.m}).second) {
        orbit.push_back(next);
        frontier.push_back(next);
      }
    }
  }
  return orbit;
}

} // namespace picx
