#include "picx/separation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "picx/hh.hpp"
#include "picx/overflow.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace picx {

int64_t separation_threshold(int64_t k, int64_t a)
{
  if (k < 0) throw std::invalid_argument("separation_threshold: k >= 0");
  if (a < 0 || 3 * a > 4 * k)
    throw std::invalid_argument("separation_threshold: need 0 <= a <= 4k/3");
  return a <= k ? 2 * a - 1 + k : a + 2 * k - 1;
}

int default_delta_max(int r, int64_t k)
{
  const int64_t target = 9 + 3 * ((4 * k) / 3);
  return static_cast<int>(std::max<int64_t>(0, target - r));
}

int64_t default_isolated_d_max(int64_t k, int64_t a) { return 3 * (a + 2 * k); }

const char* to_string(SeparationVerdict v)
{
  switch (v) {
    case SeparationVerdict::Passes: return "passes";
    case SeparationVerdict::Fails: return "fails";
    case SeparationVerdict::HypothesesNotMet: return "hypotheses-not-met";
  }
  return "?";
}

const char* to_string(AdjunctionVerdict v)
{
  switch (v) {
    case AdjunctionVerdict::Separates: return "separates";
    case AdjunctionVerdict::Inconclusive: return "inconclusive";
    case AdjunctionVerdict::Obstructed: return "obstructed";
  }
  return "?";
}

SeparationReport check_separation(const DivisorClass& h, int64_t k,
                                  int delta_max, int64_t d_max)
{
  if (k < 1) throw std::invalid_argument("check_separation: k >= 1");
  const int r = h.rank();
  SeparationReport rep;
  rep.k = k;
  rep.chi = euler_characteristic(h);
  const ReductionResult red = reduce(h);
  rep.canonical = red.canonical;
  rep.hypotheses.standard = red.standardness == Standardness::Standard;
  rep.hypotheses.chi_at_least_3k = rep.chi >= 3 * k;
  rep.hypotheses.mr_at_least_k_minus_1 =
      r == 0 || red.canonical.m.back() >= k - 1;
  rep.delta_used = delta_max >= 0 ? delta_max : default_delta_max(r, k);
  const int64_t a_max = (4 * k) / 3;
  for (int64_t a = 1; a <= a_max; ++a)
    rep.d_max_used.emplace_back(a, d_max > 0 ? d_max
                                             : default_isolated_d_max(k, a));
  if (!rep.hypotheses.all()) {
    rep.verdict = SeparationVerdict::HypothesesNotMet;
    return rep;
  }
  for (int delta = 0; delta <= rep.delta_used; ++delta) {
    const int rr = r + delta;
    if (rr < 3) continue;
    const DivisorClass hp = pullback_extend(rep.canonical, delta);
    for (int64_t a = 1; a <= a_max; ++a) {
      const int64_t bound = d_max > 0 ? d_max : default_isolated_d_max(k, a);
      const int64_t threshold = separation_threshold(k, a);
      for (const IsolatedCurve& curve : enumerate_isolated(a, rr, bound).curves) {
        // a curve whose last multiplicity vanishes was already seen at a
        // smaller extension
        if (delta > 0 && curve.cls.m.back() == 0) continue;
        const int64_t value = intersect(hp, curve.cls);
        if (value < threshold)
          rep.violations.push_back(
              SeparationViolation{curve.cls, a, threshold, value, delta});
      }
    }
  }
  rep.verdict = rep.violations.empty() ? SeparationVerdict::Passes
                                       : SeparationVerdict::Fails;
  return rep;
}

namespace {

std::vector<DivisorClass> adjunction_candidates(int r, int64_t k, int64_t bound)
{
  std::set<std::pair<int64_t, std::vector<int64_t>>> seen;
  std::vector<DivisorClass> out;
  auto push = [&](const DivisorClass& d) {
    if (seen.insert({d.d, d.m}).second) out.push_back(d);
  };

  const auto exceptional = enumerate_exceptional(r, bound);
  for (const auto& f : exceptional)
    for (int64_t n = 1; n <= k + 1; ++n) push(n * f);
  for (const auto& p : enumerate_pencil_classes(r, bound))
    for (int64_t b = 1; b <= k; ++b) push(b * p);
  for (const auto& l : enumerate_line_classes(r, bound)) push(l);

  std::vector<DivisorClass> bases;
  const int64_t genus_cap = std::max<int64_t>(2, (4 * k) / 3);
  for (int64_t a = 1; a <= genus_cap && r >= 3; ++a)
    for (const auto& c : enumerate_isolated(a, r, bound).curves)
      bases.push_back(c.cls);
  for (const auto& base : bases) {
    push(base);
    // attach multiples of basis exceptional curves in the zero slots
    std::vector<int> zero_slots;
    for (int i = r - 1; i >= 0 && base.m[i] == 0; --i) zero_slots.push_back(i);
    const int64_t budget = 2 * k + 1;
    const int use = std::min<int>(2, static_cast<int>(zero_slots.size()));
    for (int64_t n1 = 1; n1 <= budget && use >= 1; ++n1) {
      DivisorClass d1 = base;
      d1.m[zero_slots[0]] = -n1;
      push(d1);
      for (int64_t n2 = 1; n2 <= n1 && n1 + n2 <= budget && use >= 2; ++n2) {
        DivisorClass d2 = d1;
        d2.m[zero_slots[1]] = -n2;
        push(d2);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const DivisorClass& a, const DivisorClass& b) {
              return std::tie(a.d, a.m) < std::tie(b.d, b.m);
            });
  return out;
}

} // namespace

AdjunctionReport adjunction_check(const DivisorClass& h, int64_t k,
                                  int64_t search_bound)
{
  if (k < 1) throw std::invalid_argument("adjunction_check: k >= 1");
  const int r = h.rank();
  AdjunctionReport rep;
  rep.search_bound = search_bound > 0
                         ? search_bound
                         : default_isolated_d_max(k, (4 * k) / 3);
  const DivisorClass hk = h - canonical_class(r);
  const int64_t hk2 = self_intersection(hk);
  rep.nef_big =
      classify_standardness(hk) == Standardness::Standard && hk2 > 0;
  rep.square_bound = hk2 >= 4 * k + 1;
  if (!rep.nef_big || !rep.square_bound) {
    rep.verdict = AdjunctionVerdict::Inconclusive;
    return rep;
  }
  const DivisorClass kk = canonical_class(r);
  for (const DivisorClass& d : adjunction_candidates(r, k, rep.search_bound)) {
    const int64_t hd = intersect(h, d);
    const int64_t p = arithmetic_genus(d);
    const int64_t d2 = self_intersection(d);
    const int64_t dk = intersect(d, kk);
    if (hd > 2 * p - 2 + k) continue;
    if (2 * p - 2 + d2 >= hd) continue;
    if (hd >= 2 * k + dk) continue;
    if (!predicted_h0(d).effective) continue;
    if (!predicted_h0(h - kk - 2 * d).effective) continue;
    rep.verdict = AdjunctionVerdict::Obstructed;
    rep.obstruction = d;
    rep.obstruction_data =
        SeparationViolation{d, p, 2 * p - 2 + k, hd, 0};
    return rep;
  }
  rep.verdict = AdjunctionVerdict::Separates;
  return rep;
}

namespace {

// Sorted multiplicity vectors with every entry >= 1, prefix sums bounded by
// the standard inequalities, and sum m_i(m_i+1) <= budget (so that chi stays
// above the cut).  Invokes fn on each complete vector.
template <typename Fn>
void search_standard_classes(int pos, int r, int64_t cap, int64_t d,
                             int64_t budget, std::vector<int64_t>& cur, Fn&& fn)
{
  if (pos == r) {
    fn(cur);
    return;
  }
  const int64_t slots = r - pos;
  if (budget < 2 * slots) return; // every remaining entry costs >= 2
  int64_t hi = cap;
  if (pos == 0) hi = std::min(hi, d - 2);
  if (pos == 1) hi = std::min(hi, d - cur[0] - 1);
  if (pos == 2) hi = std::min(hi, d - cur[0] - cur[1]);
  for (int64_t v = hi; v >= 1; --v) {
    const int64_t cost = v * (v + 1);
    if (cost > budget - 2 * (slots - 1)) continue;
    cur.push_back(v);
    search_standard_classes(pos + 1, r, v, d, budget - cost, cur,
                            std::forward<Fn>(fn));
    cur.pop_back();
  }
}

std::vector<FailingClass> failing_for_degree(
    int r, int64_t k, int64_t d, int64_t chi_min,
    const std::vector<std::pair<int64_t, std::vector<IsolatedCurve>>>& curves)
{
  std::vector<FailingClass> found;
  // chi >= chi_min  <=>  sum m(m+1) <= d(d+3) - 2(chi_min - 1)
  const int64_t budget = d * (d + 3) - 2 * (chi_min - 1);
  std::vector<int64_t> cur;
  search_standard_classes(
      0, r, d, d, budget, cur, [&](const std::vector<int64_t>& m) {
        DivisorClass cls(d, m);
        std::vector<SeparationViolation> violations;
        for (const auto& [a, list] : curves) {
          const int64_t threshold = separation_threshold(k, a);
          for (const IsolatedCurve& curve : list) {
            const int64_t value = intersect(cls, curve.cls);
            if (value < threshold)
              violations.push_back(
                  SeparationViolation{curve.cls, a, threshold, value, 0});
          }
        }
        if (!violations.empty())
          found.push_back(FailingClass{std::move(cls), std::move(violations)});
      });
  return found;
}

} // namespace

std::vector<FailingClass> search_failing_classes(int r, int64_t k,
                                                 int64_t d_max, int64_t chi_min)
{
  if (k != 1 && k != 2)
    throw std::invalid_argument("search_failing_classes: k must be 1 or 2");
  if (r < 9) throw std::invalid_argument("search_failing_classes: r >= 9");
  std::vector<std::pair<int64_t, std::vector<IsolatedCurve>>> curves;
  for (int64_t a = 1; a <= k; ++a)
    curves.emplace_back(
        a, enumerate_isolated(a, r, default_isolated_d_max(k, a)).curves);
  std::vector<std::vector<FailingClass>> by_degree(
      static_cast<size_t>(std::max<int64_t>(d_max, 0)) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int64_t d = 3; d <= d_max; ++d)
    by_degree[static_cast<size_t>(d)] =
        failing_for_degree(r, k, d, chi_min, curves);
  std::vector<FailingClass> out;
  for (auto& bucket : by_degree)
    for (auto& f : bucket) out.push_back(std::move(f));
  return out;
}

std::vector<FailingClass> search_failing_classes_reference(int r, int64_t k,
                                                           int64_t d_max,
                                                           int64_t chi_min)
{
  if (k != 1 && k != 2)
    throw std::invalid_argument("search_failing_classes: k must be 1 or 2");
  if (r < 9) throw std::invalid_argument("search_failing_classes: r >= 9");
  std::vector<std::pair<int64_t, std::vector<IsolatedCurve>>> curves;
  for (int64_t a = 1; a <= k; ++a)
    curves.emplace_back(
        a, enumerate_isolated(a, r, default_isolated_d_max(k, a)).curves);
  std::vector<FailingClass> out;
  for (int64_t d = 3; d <= d_max; ++d) {
    auto bucket = failing_for_degree(r, k, d, chi_min, curves);
    out.insert(out.end(), std::make_move_iterator(bucket.begin()),
               std::make_move_iterator(bucket.end()));
  }
  return out;
}

} // namespace picx
