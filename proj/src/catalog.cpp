#include "picx/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "picx/overflow.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace picx {

namespace {

int64_t isqrt_floor(int64_t q)
{
  if (q < 0) return -1;
  auto v = static_cast<int64_t>(std::sqrt(static_cast<double>(q)));
  while (v * v > q) --v;
  while ((v + 1) * (v + 1) <= q) ++v;
  return v;
}

// Sorted non-increasing m[0..r-1] >= 0 with sum == S and square-sum == Q.
// `degree` activates the standard-class prefix bounds m1 <= d, m1+m2 <= d,
// m1+m2+m3 <= d; pass -1 to disable.  Prefix pruning: remaining entries are
// bounded by the running cap, so Q <= cap*S; Cauchy-Schwarz gives
// Q >= S^2/slots.
void search_sorted(int pos, int r, int64_t cap, int64_t S, int64_t Q,
                   int64_t degree, std::vector<int64_t>& cur,
                   std::vector<std::vector<int64_t>>& out)
{
  if (S < 0 || Q < 0) return;
  if (pos == r) {
    if (S == 0 && Q == 0) out.push_back(cur);
    return;
  }
  const int64_t slots = r - pos;
  if (Q > cap * S) return;
  if (S > cap * slots) return;
  if (static_cast<__int128>(S) * S > static_cast<__int128>(Q) * slots) return;
  int64_t hi = std::min({cap, isqrt_floor(Q), S});
  if (degree >= 0) {
    if (pos == 1) hi = std::min(hi, degree - cur[0]);
    if (pos == 2) hi = std::min(hi, degree - cur[0] - cur[1]);
  }
  for (int64_t v = hi; v >= 0; --v) {
    cur.push_back(v);
    search_sorted(pos + 1, r, v, S - v, Q - v * v, degree, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int64_t>> solutions_for(int r, int64_t d, int64_t S,
                                                int64_t Q, bool standard)
{
  std::vector<std::vector<int64_t>> out;
  if (Q < 0 || S < 0) return out;
  std::vector<int64_t> cur;
  search_sorted(0, r, d, S, Q, standard ? d : -1, cur, out);
  return out;
}

// Minimal-pruning reference enumerator, kept as the test oracle.
void search_plain(int pos, int r, int64_t cap, int64_t S, int64_t Q,
                  std::vector<int64_t>& cur,
                  std::vector<std::vector<int64_t>>& out)
{
  if (S < 0 || Q < 0) return;
  if (pos == r) {
    if (S == 0 && Q == 0) out.push_back(cur);
    return;
  }
  for (int64_t v = std::min(cap, S); v >= 0; --v) {
    if (v * v > Q) continue;
    cur.push_back(v);
    search_plain(pos + 1, r, v, S - v, Q - v * v, cur, out);
    cur.pop_back();
  }
}

bool standard_sorted_nonneg(int64_t d, const std::vector<int64_t>& m)
{
  const size_t r = m.size();
  if (d < 0) return false;
  if (r >= 1 && d < m[0]) return false;
  if (r >= 2 && d < m[0] + m[1]) return false;
  if (r >= 3 && d < m[0] + m[1] + m[2]) return false;
  return true;
}

int64_t content(const DivisorClass& h)
{
  int64_t g = std::abs(h.d);
  for (int64_t v : h.m) g = std::gcd(g, std::abs(v));
  return g;
}

DivisorClass last_point_class(int r)
{
  DivisorClass e(0, std::vector<int64_t>(r, 0));
  e.m[r - 1] = -1;
  return e;
}

std::vector<DivisorClass> enumerate_rational_family(int r, int64_t d_max,
                                                    int64_t sum_offset,
                                                    int64_t sq_offset)
{
  // solutions of sum m = 3d + sum_offset, sum m^2 = d^2 + sq_offset
  std::vector<DivisorClass> out;
  for (int64_t d = 1; d <= d_max; ++d) {
    for (auto& m : solutions_for(r, d, 3 * d + sum_offset, d * d + sq_offset,
                                 false))
      out.emplace_back(d, std::move(m));
  }
  return out;
}

} // namespace

const char* to_string(RationalOrbitTag t)
{
  switch (t) {
    case RationalOrbitTag::Exceptional: return "exceptional";
    case RationalOrbitTag::Pencil: return "pencil";
    case RationalOrbitTag::Line: return "line";
    case RationalOrbitTag::Conic: return "conic";
    case RationalOrbitTag::MultiA: return "multi-a";
    case RationalOrbitTag::MultiB: return "multi-b";
  }
  return "?";
}

std::string describe(const RationalOrbitKind& k)
{
  switch (k.tag) {
    case RationalOrbitTag::Exceptional: return "E_r";
    case RationalOrbitTag::Pencil: return "E0-E1";
    case RationalOrbitTag::Line: return "E0";
    case RationalOrbitTag::Conic: return "2E0";
    case RationalOrbitTag::MultiA:
      return std::to_string(k.degree) + "E0-" +
             (k.degree == 2 ? "" : std::to_string(k.degree - 1)) + "E1-E2";
    case RationalOrbitTag::MultiB:
      return std::to_string(k.degree) + "E0-" +
             (k.degree == 2 ? "" : std::to_string(k.degree - 1)) + "E1";
  }
  return "?";
}

RationalOrbitKind classify_rational_orbit(const DivisorClass& e)
{
  const int r = e.rank();
  const int64_t s = self_intersection(e);
  const int64_t ek = intersect(e, canonical_class(r));
  if (s != -2 - ek || s < -1)
    throw std::invalid_argument("not a rational class");
  const DivisorClass c = reduce(e).canonical;
  const auto& m = c.m;
  const int nonzero =
      static_cast<int>(std::count_if(m.begin(), m.end(),
                                     [](int64_t v) { return v != 0; }));
  if (c.d == 0 && nonzero == 1 && m[r - 1] == -1)
    return {RationalOrbitTag::Exceptional, 0};
  if (nonzero == 0) {
    if (c.d == 1) return {RationalOrbitTag::Line, 0};
    if (c.d == 2) return {RationalOrbitTag::Conic, 0};
  }
  if (c.d == 1 && nonzero == 1 && m[0] == 1)
    return {RationalOrbitTag::Pencil, 0};
  if (c.d >= 2 && nonzero == 2 && m[0] == c.d - 1 && m[1] == 1)
    return {RationalOrbitTag::MultiA, c.d};
  if (c.d >= 2 && nonzero == 1 && m[0] == c.d - 1)
    return {RationalOrbitTag::MultiB, c.d};
  throw std::invalid_argument(
      "not a rational class (no orbit representative matched; the list "
      "assumes rank >= 3)");
}

bool is_exceptional(const DivisorClass& e)
{
  if (self_intersection(e) != -1) return false;
  if (intersect(e, canonical_class(e.rank())) != -1) return false;
  const ReductionResult red = reduce(e);
  if (red.standardness == Standardness::Neither) return false;
  const OrthogonalDecomposition dec = semistandard_decompose(red.canonical);
  return dec.standard_part.is_zero() && dec.pieces.size() == 1 &&
         dec.pieces[0].first == 1;
}

std::vector<DivisorClass> enumerate_exceptional(int r, int64_t d_max)
{
  if (r < 1) throw std::invalid_argument("enumerate_exceptional: rank >= 1");
  if (d_max < 0) throw std::invalid_argument("enumerate_exceptional: d_max >= 0");
  std::vector<std::vector<DivisorClass>> by_degree(
      static_cast<size_t>(d_max) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int64_t d = 1; d <= d_max; ++d) {
    std::vector<DivisorClass> local;
    for (auto& m : solutions_for(r, d, 3 * d - 1, d * d + 1, false))
      local.emplace_back(d, std::move(m));
    by_degree[static_cast<size_t>(d)] = std::move(local);
  }
  std::vector<DivisorClass> out{last_point_class(r)};
  for (auto& bucket : by_degree)
    out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::vector<DivisorClass> enumerate_exceptional_reference(int r, int64_t d_max)
{
  if (r < 1) throw std::invalid_argument("enumerate_exceptional: rank >= 1");
  std::vector<DivisorClass> out{last_point_class(r)};
  for (int64_t d = 1; d <= d_max; ++d) {
    std::vector<std::vector<int64_t>> sols;
    std::vector<int64_t> cur;
    search_plain(0, r, d, 3 * d - 1, d * d + 1, cur, sols);
    for (auto& m : sols) out.emplace_back(d, std::move(m));
  }
  return out;
}

std::vector<DivisorClass> enumerate_pencil_classes(int r, int64_t d_max)
{
  return enumerate_rational_family(r, d_max, -2, 0);
}

std::vector<DivisorClass> enumerate_line_classes(int r, int64_t d_max)
{
  return enumerate_rational_family(r, d_max, -3, -1);
}

namespace {

IsolatedEnumeration isolated_completeness(int64_t a, int r, int64_t d_max)
{
  // Solutions need (3d + a - 1)^2 <= r (d^2 - a + 1), i.e.
  // (9-r) d^2 + 6(a-1) d + (a-1)(a-1+r) <= 0.
  IsolatedEnumeration info;
  auto feasible = [&](int64_t d) {
    return (9 - r) * d * d + 6 * (a - 1) * d + (a - 1) * (a - 1 + r) <= 0;
  };
  if (r < 9) {
    if (a == 1) {
      info.completeness_bound = 0; // 9 d^2 <= r d^2 forces d = 0
      info.complete = true;
      return info;
    }
    const int64_t disc = 4 * r * (a - 1) * (a + r - 10);
    if (disc < 0) {
      info.completeness_bound = 0;
      info.complete = true;
      return info;
    }
    auto u = static_cast<int64_t>(
        (-6.0 * (a - 1) + std::sqrt(static_cast<double>(disc))) /
        (2.0 * (9 - r)));
    while (feasible(u + 1)) ++u;
    while (u >= 0 && !feasible(u)) --u;
    info.completeness_bound = std::max<int64_t>(u, 0);
    info.complete = d_max >= info.completeness_bound;
    return info;
  }
  if (r == 9) {
    // equality case of Cauchy-Schwarz: all multiplicities equal, so the
    // only primitive genus-one solution is the plane cubic class at d = 3
    info.completeness_bound = a == 1 ? 3 : 0;
    info.complete = d_max >= info.completeness_bound;
    return info;
  }
  info.completeness_bound = -1; // unbounded beyond any d_max when r >= 10
  info.complete = false;
  return info;
}

} // namespace

IsolatedEnumeration enumerate_isolated(int64_t a, int r, int64_t d_max)
{
  if (a < 1) throw std::invalid_argument("enumerate_isolated: genus >= 1");
  if (r < 3) throw std::invalid_argument("enumerate_isolated: rank >= 3");
  IsolatedEnumeration out = isolated_completeness(a, r, d_max);
  std::vector<std::vector<IsolatedCurve>> by_degree(
      static_cast<size_t>(std::max<int64_t>(d_max, 0)) + 1);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int64_t d = 1; d <= d_max; ++d) {
    std::vector<IsolatedCurve> local;
    for (auto& m : solutions_for(r, d, 3 * d + (a - 1), d * d - (a - 1), true)) {
      DivisorClass cls(d, std::move(m));
      if (content(cls) != 1) continue; // multiples are never integral
      local.push_back(IsolatedCurve{std::move(cls), a, a >= 5});
    }
    by_degree[static_cast<size_t>(d)] = std::move(local);
  }
  for (auto& bucket : by_degree)
    out.curves.insert(out.curves.end(), bucket.begin(), bucket.end());
  return out;
}

std::vector<DivisorClass> enumerate_isolated_reference(int64_t a, int r,
                                                       int64_t d_max)
{
  if (a < 1) throw std::invalid_argument("enumerate_isolated: genus >= 1");
  if (r < 3) throw std::invalid_argument("enumerate_isolated: rank >= 3");
  std::vector<DivisorClass> out;
  for (int64_t d = 1; d <= d_max; ++d) {
    if (d * d - (a - 1) < 0) continue;
    std::vector<std::vector<int64_t>> sols;
    std::vector<int64_t> cur;
    search_plain(0, r, d, 3 * d + (a - 1), d * d - (a - 1), cur, sols);
    for (auto& m : sols) {
      DivisorClass cls(d, std::move(m));
      if (!standard_sorted_nonneg(cls.d, cls.m)) continue;
      if (content(cls) != 1) continue;
      out.push_back(std::move(cls));
    }
  }
  return out;
}

GeneratingDecomposition generating_decomposition(const DivisorClass& h)
{
  if (!is_e_standard(h))
    throw std::invalid_argument(
        "generating_decomposition: class is not E-standard");
  const int r = h.rank();
  GeneratingDecomposition g;
  if (r == 0) {
    g.a = h.d;
    return g;
  }
  if (r == 1) {
    g.b = h.m[0];
    g.a = checked_sub(h.d, h.m[0]);
    return g;
  }
  if (r == 2) {
    g.c = h.m[1];
    g.b = checked_sub(h.m[0], h.m[1]);
    g.a = checked_sub(checked_sub(h.d, h.m[0]), h.m[1]);
    return g;
  }
  g.alpha.resize(static_cast<size_t>(r) - 2);
  for (int i = 3; i < r; ++i) g.alpha[i - 3] = checked_sub(h.m[i - 1], h.m[i]);
  g.alpha[r - 3] = h.m[r - 1];
  g.c = checked_sub(h.m[1], h.m[2]);
  g.b = checked_sub(h.m[0], h.m[1]);
  g.a = checked_sub(checked_sub(checked_sub(h.d, h.m[0]), h.m[1]), h.m[2]);
  return g;
}

DivisorClass reconstruct_from_generating(const GeneratingDecomposition& g, int r)
{
  DivisorClass h(0, std::vector<int64_t>(r, 0));
  h = h + g.a * line_class(r);
  if (r >= 1) {
    DivisorClass pencil(1, std::vector<int64_t>(r, 0));
    pencil.m[0] = 1;
    h = h + g.b * pencil;
  }
  if (r >= 2) {
    DivisorClass quad(2, std::vector<int64_t>(r, 0));
    quad.m[0] = quad.m[1] = 1;
    h = h + g.c * quad;
  }
  for (size_t j = 0; j < g.alpha.size(); ++j)
    h = h + g.alpha[j] * elliptic_generating_class(static_cast<int>(j) + 3, r);
  return h;
}

DivisorClass C9_class() { return anticanonical_class(9); }

DivisorClass G1_class()
{
  DivisorClass g(4, std::vector<int64_t>(12, 1));
  g.m[0] = 2;
  return g;
}

DivisorClass G2_class()
{
  DivisorClass g(6, std::vector<int64_t>(11, 2));
  g.m[8] = g.m[9] = g.m[10] = 1;
  return g;
}

DivisorClass G3_class()
{
  DivisorClass g(9, std::vector<int64_t>(10, 3));
  g.m[8] = g.m[9] = 2;
  return g;
}

} // namespace picx
