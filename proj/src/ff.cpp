#include "picx/ff.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "picx/hh.hpp"
#include "picx/weyl.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace picx::ff {

namespace {

using std::int64_t;
using std::uint64_t;

int64_t mod_norm(int64_t v, int64_t p)
{
  v %= p;
  return v < 0 ? v + p : v;
}

int64_t mod_mul(int64_t a, int64_t b, int64_t p) { return a * b % p; }

int64_t mod_pow(int64_t b, int64_t e, int64_t p)
{
  int64_t r = 1 % p;
  b = mod_norm(b, p);
  while (e > 0) {
    if (e & 1) r = mod_mul(r, b, p);
    b = mod_mul(b, b, p);
    e >>= 1;
  }
  return r;
}

int64_t mod_inv(int64_t a, int64_t p) { return mod_pow(a, p - 2, p); }

// ---------------------------------------------------------------- univariate

using Poly = std::vector<int64_t>; // coefficient of x^i at index i

void trim(Poly& f)
{
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int deg(const Poly& f) { return static_cast<int>(f.size()) - 1; }

Poly poly_scale(Poly f, int64_t s, int64_t p)
{
  for (auto& c : f) c = mod_mul(c, s, p);
  trim(f);
  return f;
}

Poly poly_mod(Poly f, const Poly& g, int64_t p)
{
  const int dg = deg(g);
  const int64_t inv_lead = mod_inv(g.back(), p);
  while (deg(f) >= dg) {
    const int shift = deg(f) - dg;
    const int64_t q = mod_mul(f.back(), inv_lead, p);
    for (int i = 0; i <= dg; ++i)
      f[i + shift] = mod_norm(f[i + shift] - mod_mul(q, g[i], p), p);
    trim(f);
  }
  return f;
}

Poly poly_gcd(Poly a, Poly b, int64_t p)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = poly_scale(a, mod_inv(a.back(), p), p);
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& f, int64_t p)
{
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = mod_norm(r[i + j] + mod_mul(a[i], b[j], p), p);
  }
  trim(r);
  if (deg(r) >= deg(f)) r = poly_mod(std::move(r), f, p);
  return r;
}

// x^e mod f
Poly poly_xpow_mod(int64_t e, const Poly& f, int64_t p)
{
  Poly result{1};
  Poly base{0, 1};
  if (deg(f) == 1) {
    // x = -f0/f1 mod f
    base = Poly{mod_norm(-mod_mul(f[0], mod_inv(f[1], p), p), p)};
    trim(base);
  }
  while (e > 0) {
    if (e & 1) result = poly_mul_mod(result, base, f, p);
    base = poly_mul_mod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

void split_linear(const Poly& f, int64_t p, Rng& rng, std::vector<int64_t>& out)
{
  // f is monic, squarefree, a product of distinct linear factors
  if (deg(f) <= 0) return;
  if (deg(f) == 1) {
    out.push_back(mod_norm(-f[0], p));
    return;
  }
  while (true) {
    const int64_t a = rng.below(p);
    // gcd(f, (x+a)^((p-1)/2) - 1)
    Poly h;
    {
      int64_t e = (p - 1) / 2;
      Poly base = poly_mod(Poly{a, 1}, f, p);
      Poly acc{1};
      while (e > 0) {
        if (e & 1) acc = poly_mul_mod(acc, base, f, p);
        base = poly_mul_mod(base, base, f, p);
        e >>= 1;
      }
      h = std::move(acc);
    }
    if (h.empty()) h = Poly{0};
    h[0] = mod_norm(h[0] - 1, p);
    trim(h);
    Poly g = poly_gcd(f, h, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      // divide f by g
      Poly q;
      {
        Poly rem = f;
        const int dgg = deg(g);
        q.assign(deg(f) - dgg + 1, 0);
        const int64_t inv_lead = mod_inv(g.back(), p);
        while (deg(rem) >= dgg) {
          const int shift = deg(rem) - dgg;
          const int64_t c = mod_mul(rem.back(), inv_lead, p);
          q[shift] = c;
          for (int i = 0; i <= dgg; ++i)
            rem[i + shift] = mod_norm(rem[i + shift] - mod_mul(c, g[i], p), p);
          trim(rem);
        }
      }
      trim(q);
      split_linear(g, p, rng, out);
      split_linear(q, p, rng, out);
      return;
    }
  }
}

// All roots of f in F_p (distinct), sorted.
std::vector<int64_t> poly_roots(Poly f, int64_t p, Rng& rng)
{
  std::vector<int64_t> out;
  trim(f);
  if (f.empty() || deg(f) == 0) return out;
  f = poly_scale(f, mod_inv(f.back(), p), p);
  // g = gcd(f, x^p - x)
  Poly xp = poly_xpow_mod(p, f, p);
  Poly xpmx = xp;
  xpmx.resize(std::max<size_t>(xpmx.size(), 2), 0);
  xpmx[1] = mod_norm(xpmx[1] - 1, p);
  trim(xpmx);
  Poly g = poly_gcd(f, xpmx, p);
  if (deg(g) <= 0) return out;
  split_linear(g, p, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

int64_t uni_resultant(Poly f, Poly g, int64_t p)
{
  trim(f);
  trim(g);
  if (f.empty() || g.empty()) return 0;
  int64_t res = 1;
  while (true) {
    const int df = deg(f);
    const int dg = deg(g);
    if (dg == 0) return mod_mul(res, mod_pow(g[0], df, p), p);
    Poly rem = poly_mod(f, g, p);
    if ((df & 1) && (dg & 1)) res = mod_norm(-res, p);
    const int dr = deg(rem);
    if (rem.empty()) return 0;
    res = mod_mul(res, mod_pow(g.back(), df - dr, p), p);
    f = std::move(g);
    g = std::move(rem);
  }
}

// ------------------------------------------------------------- plane curves

// Monomials x^a y^b z^(d-a-b), a+b <= d, ordered by a descending then b
// descending; kernel vectors of the conditions matrix use this order.
size_t monomial_index(int64_t d, int64_t a, int64_t b)
{
  const int64_t t = d - a;
  return static_cast<size_t>(t * (t + 1) / 2 + (t - b));
}

struct Curve {
  int64_t d = 0;
  std::vector<int64_t> c;
};

int64_t curve_eval(const Curve& f, int64_t x, int64_t y, int64_t p)
{
  // Horner over a, then over b
  int64_t acc = 0;
  for (int64_t a = f.d; a >= 0; --a) {
    int64_t inner = 0;
    for (int64_t b = f.d - a; b >= 0; --b)
      inner = mod_norm(mod_mul(inner, y, p) + f.c[monomial_index(f.d, a, b)], p);
    // inner = sum_b c x^a-part evaluated; accumulate with x-Horner:
    acc = mod_norm(mod_mul(acc, x, p) + inner, p);
  }
  return acc;
}

// univariate in y at x = x0
Poly curve_y_poly(const Curve& f, int64_t x0, int64_t p)
{
  Poly out(static_cast<size_t>(f.d) + 1, 0);
  std::vector<int64_t> xpow(static_cast<size_t>(f.d) + 1, 1);
  for (int64_t i = 1; i <= f.d; ++i)
    xpow[static_cast<size_t>(i)] = mod_mul(xpow[static_cast<size_t>(i - 1)], x0, p);
  for (int64_t a = 0; a <= f.d; ++a)
    for (int64_t b = 0; b <= f.d - a; ++b) {
      const int64_t coeff = f.c[monomial_index(f.d, a, b)];
      if (coeff)
        out[static_cast<size_t>(b)] = mod_norm(
            out[static_cast<size_t>(b)] +
                mod_mul(coeff, xpow[static_cast<size_t>(a)], p),
            p);
    }
  trim(out);
  return out;
}

int curve_y_degree(const Curve& f)
{
  for (int64_t b = f.d; b >= 0; --b)
    for (int64_t a = 0; a <= f.d - b; ++a)
      if (f.c[monomial_index(f.d, a, b)]) return static_cast<int>(b);
  return -1;
}

// leading y-coefficient as a polynomial in x
Poly curve_y_lead(const Curve& f, int by, int64_t p)
{
  Poly out(static_cast<size_t>(f.d - by) + 1, 0);
  for (int64_t a = 0; a <= f.d - by; ++a)
    out[static_cast<size_t>(a)] = mod_norm(f.c[monomial_index(f.d, a, by)], p);
  trim(out);
  return out;
}

int64_t poly_eval(const Poly& f, int64_t x, int64_t p)
{
  int64_t acc = 0;
  for (size_t i = f.size(); i-- > 0;) acc = mod_norm(mod_mul(acc, x, p) + f[i], p);
  return acc;
}

// Newton interpolation through n distinct nodes.
Poly interpolate(const std::vector<int64_t>& xs, const std::vector<int64_t>& ys,
                 int64_t p)
{
  const size_t n = xs.size();
  std::vector<int64_t> dd = ys; // divided differences
  for (size_t level = 1; level < n; ++level)
    for (size_t i = n - 1; i >= level; --i) {
      const int64_t den = mod_norm(xs[i] - xs[i - level], p);
      dd[i] = mod_mul(mod_norm(dd[i] - dd[i - 1], p), mod_inv(den, p), p);
      if (i == level) break;
    }
  Poly out{dd[n - 1]};
  for (size_t i = n - 1; i-- > 0;) {
    // out = out * (x - xs[i]) + dd[i]
    Poly next(out.size() + 1, 0);
    for (size_t j = 0; j < out.size(); ++j) {
      next[j + 1] = mod_norm(next[j + 1] + out[j], p);
      next[j] = mod_norm(next[j] - mod_mul(out[j], xs[i], p), p);
    }
    next[0] = mod_norm(next[0] + dd[i], p);
    out = std::move(next);
    trim(out);
    if (out.empty()) out = Poly{0};
  }
  trim(out);
  return out;
}

// Res_y(f, g) as a polynomial in x, by evaluation at good nodes and
// interpolation.  Nodes where either leading y-coefficient vanishes are
// skipped (the specialized resultant would not equal R there).
Poly bivariate_resultant_x(const Curve& f, const Curve& g, int64_t p)
{
  const int bf = curve_y_degree(f);
  const int bg = curve_y_degree(g);
  if (bf < 0 || bg < 0) return {};
  const Poly lead_f = curve_y_lead(f, bf, p);
  const Poly lead_g = curve_y_lead(g, bg, p);
  const int64_t bound = f.d * g.d + 1;
  std::vector<int64_t> xs, ys;
  for (int64_t x0 = 0; x0 < p && static_cast<int64_t>(xs.size()) < bound; ++x0) {
    if (poly_eval(lead_f, x0, p) == 0 || poly_eval(lead_g, x0, p) == 0)
      continue;
    Poly fy = curve_y_poly(f, x0, p);
    Poly gy = curve_y_poly(g, x0, p);
    xs.push_back(x0);
    ys.push_back(uni_resultant(std::move(fy), std::move(gy), p));
  }
  if (static_cast<int64_t>(xs.size()) < bound)
    return {}; // give up; caller treats as degenerate
  return interpolate(xs, ys, p);
}

// ------------------------------------------------------------------ series

// truncated power series in t, length k
using Series = std::vector<int64_t>;

Series series_mul(const Series& a, const Series& b, int64_t p)
{
  const size_t k = a.size();
  Series out(k, 0);
  for (size_t i = 0; i < k; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < k; ++j)
      out[i + j] = mod_norm(out[i + j] + mod_mul(a[i], b[j], p), p);
  }
  return out;
}

} // namespace

// ----------------------------------------------------------------- public

std::int64_t Rng::below(std::int64_t n)
{
  if (n <= 0) throw std::invalid_argument("Rng::below: n must be positive");
  const uint64_t un = static_cast<uint64_t>(n);
  const uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  while (true) {
    const uint64_t v = next();
    if (v < limit) return static_cast<int64_t>(v % un);
  }
}

bool is_prime(int64_t p)
{
  if (p < 2) return false;
  for (int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

PointConfiguration sample_point_configuration(int r, int64_t p, Rng& rng)
{
  PointConfiguration cfg;
  cfg.p = p;
  auto collinear = [&](const std::array<int64_t, 2>& a,
                       const std::array<int64_t, 2>& b,
                       const std::array<int64_t, 2>& c) {
    const int64_t det =
        mod_norm(mod_mul(mod_norm(b[0] - a[0], p), mod_norm(c[1] - a[1], p), p) -
                     mod_mul(mod_norm(b[1] - a[1], p),
                             mod_norm(c[0] - a[0], p), p),
                 p);
    return det == 0;
  };
  int guard = 0;
  while (static_cast<int>(cfg.points.size()) < r) {
    if (++guard > 1000 * (r + 1))
      throw std::runtime_error("point sampling failed to find a generic set");
    std::array<int64_t, 2> q{rng.below(p), rng.below(p)};
    bool ok = true;
    for (const auto& a : cfg.points)
      if (a == q) ok = false;
    if (ok && cfg.points.size() >= 2) {
      for (size_t i = 0; i < cfg.points.size() && ok; ++i)
        for (size_t j = i + 1; j < cfg.points.size() && ok; ++j)
          if (collinear(cfg.points[i], cfg.points[j], q)) ok = false;
    }
    if (ok) cfg.points.push_back(q);
  }
  return cfg;
}

namespace {

int eliminate(FpMatrix& m, bool reduced, bool parallel,
              std::vector<int>* pivots)
{
  const int64_t p = m.p;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pivot = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = col; j < m.cols; ++j) std::swap(m.at(pivot, j), m.at(row, j));
    const int64_t inv = mod_inv(m.at(row, col), p);
    for (int j = col; j < m.cols; ++j) m.at(row, j) = mod_mul(m.at(row, j), inv, p);
    const int begin = reduced ? 0 : row + 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel && m.rows > 64)
#endif
    for (int i = begin; i < m.rows; ++i) {
      if (i == row) continue;
      const int64_t f = m.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = mod_norm(m.at(i, j) - mod_mul(f, m.at(row, j), p), p);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return row;
}

} // namespace

int fp_rank(FpMatrix m) { return eliminate(m, false, true, nullptr); }

int fp_rank_serial(FpMatrix m) { return eliminate(m, false, false, nullptr); }

std::vector<int> fp_rref(FpMatrix& m)
{
  std::vector<int> pivots;
  eliminate(m, true, false, &pivots);
  return pivots;
}

std::vector<std::vector<int64_t>> fp_kernel_basis(const FpMatrix& m_in)
{
  FpMatrix m = m_in;
  const std::vector<int> pivots = fp_rref(m);
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<int64_t>> basis;
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[static_cast<size_t>(j)]) continue;
    std::vector<int64_t> v(static_cast<size_t>(m.cols), 0);
    v[static_cast<size_t>(j)] = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<size_t>(pivots[i])] =
          mod_norm(-m.at(static_cast<int>(i), j), m.p);
    basis.push_back(std::move(v));
  }
  return basis;
}

int monomial_count(int64_t d)
{
  if (d < 0) return 0;
  return static_cast<int>((d + 1) * (d + 2) / 2);
}

FpMatrix conditions_matrix(int64_t d, const std::vector<int64_t>& mult,
                           const PointConfiguration& cfg)
{
  if (d < 0) throw std::invalid_argument("conditions_matrix: degree >= 0");
  if (cfg.p <= d)
    throw std::invalid_argument("conditions_matrix: need p > d");
  if (mult.size() > cfg.points.size())
    throw std::invalid_argument("conditions_matrix: not enough points");
  const int64_t p = cfg.p;
  int64_t rows = 0;
  for (int64_t m : mult) {
    if (m < 0)
      throw std::invalid_argument("conditions_matrix: negative multiplicity");
    rows += m * (m + 1) / 2;
  }
  const int cols = monomial_count(d);
  if (rows * cols > 80'000'000)
    throw std::invalid_argument("conditions_matrix: system too large");
  // binomial table mod p, valid since d < p
  std::vector<std::vector<int64_t>> binom(static_cast<size_t>(d) + 1);
  for (int64_t n = 0; n <= d; ++n) {
    binom[static_cast<size_t>(n)].assign(static_cast<size_t>(n) + 1, 1);
    for (int64_t i = 1; i < n; ++i)
      binom[static_cast<size_t>(n)][static_cast<size_t>(i)] =
          mod_norm(binom[static_cast<size_t>(n - 1)][static_cast<size_t>(i - 1)] +
                       binom[static_cast<size_t>(n - 1)][static_cast<size_t>(i)],
                   p);
  }
  FpMatrix out(static_cast<int>(rows), cols, p);
  int row = 0;
  for (size_t i = 0; i < mult.size(); ++i) {
    const int64_t mi = mult[i];
    if (mi == 0) continue;
    const int64_t px = cfg.points[i][0];
    const int64_t py = cfg.points[i][1];
    std::vector<int64_t> xp(static_cast<size_t>(d) + 1, 1);
    std::vector<int64_t> yp(static_cast<size_t>(d) + 1, 1);
    for (int64_t e = 1; e <= d; ++e) {
      xp[static_cast<size_t>(e)] = mod_mul(xp[static_cast<size_t>(e - 1)], px, p);
      yp[static_cast<size_t>(e)] = mod_mul(yp[static_cast<size_t>(e - 1)], py, p);
    }
    // Taylor coefficient of x^al y^be in f(x+px, y+py), for al+be < mi
    for (int64_t al = 0; al < mi; ++al)
      for (int64_t be = 0; al + be < mi; ++be) {
        for (int64_t a = 0; a <= d; ++a)
          for (int64_t b = 0; b <= d - a; ++b) {
            if (a < al || b < be) continue;
            const int64_t v = mod_mul(
                mod_mul(binom[static_cast<size_t>(a)][static_cast<size_t>(al)],
                        binom[static_cast<size_t>(b)][static_cast<size_t>(be)],
                        p),
                mod_mul(xp[static_cast<size_t>(a - al)],
                        yp[static_cast<size_t>(b - be)], p),
                p);
            out.at(row, static_cast<int>(monomial_index(d, a, b))) = v;
          }
        ++row;
      }
  }
  return out;
}

InterpolationSystem build_interpolation_system(int64_t d,
                                               const std::vector<int64_t>& mult,
                                               const PointConfiguration& cfg)
{
  InterpolationSystem sys;
  sys.degree = d;
  sys.mult = mult;
  sys.p = cfg.p;
  sys.points = cfg;
  sys.conditions = conditions_matrix(d, mult, cfg);
  return sys;
}

int64_t actual_h0(int64_t d, const std::vector<int64_t>& mult, int64_t p,
                  int trials, uint64_t seed)
{
  if (!is_prime(p)) throw std::invalid_argument("actual_h0: p must be prime");
  if (p <= d) throw std::invalid_argument("actual_h0: need p > d");
  if (p >= (int64_t(1) << 31))
    throw std::invalid_argument("actual_h0: p too large");
  if (trials < 1) throw std::invalid_argument("actual_h0: trials >= 1");
  if (d < 0) return 0;
  Rng rng(seed);
  const int r = static_cast<int>(mult.size());
  int64_t best = -1;
  for (int t = 0; t < trials; ++t) {
    PointConfiguration cfg = sample_point_configuration(r, p, rng);
    cfg.seed = seed;
    const int64_t kernel =
        build_interpolation_system(d, mult, cfg).kernel_dimension();
    if (best < 0 || kernel < best) best = kernel;
  }
  return best;
}

HhVerification verify_hh_prediction(const DivisorClass& h, int64_t p,
                                    int trials, uint64_t seed)
{
  HhVerification rep;
  rep.cls = h;
  rep.p = p;
  rep.trials = trials;
  rep.seed = seed;
  rep.chi = euler_characteristic(h);
  DivisorClass realized = h;
  const bool direct =
      h.d >= 0 &&
      std::all_of(h.m.begin(), h.m.end(), [](int64_t v) { return v >= 0; });
  if (!direct) {
    realized = reduce(h).canonical;
    const bool ok = realized.d >= 0 &&
                    std::all_of(realized.m.begin(), realized.m.end(),
                                [](int64_t v) { return v >= 0; });
    if (!ok)
      throw std::invalid_argument(
          "verify_hh_prediction: class has no plane realization with "
          "non-negative multiplicities");
  }
  rep.realized_degree = realized.d;
  rep.realized_mult = realized.m;
  rep.predicted = predicted_h0(h).h0;
  rep.actual = actual_h0(realized.d, realized.m, p, trials, seed);
  rep.agree = rep.predicted == rep.actual;
  return rep;
}

// ------------------------------------------------------- cluster separation

namespace {

struct RrefContext {
  FpMatrix rref;
  std::vector<int> pivots;
  int64_t p = 0;
  int cols = 0;

  // residual of a row after reduction against the RREF rows
  std::vector<int64_t> reduce_row(std::vector<int64_t> row) const
  {
    for (size_t i = 0; i < pivots.size(); ++i) {
      const int64_t f = row[static_cast<size_t>(pivots[i])];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j)
        row[static_cast<size_t>(j)] = mod_norm(
            row[static_cast<size_t>(j)] -
                mod_mul(f, rref.at(static_cast<int>(i), j), p),
            p);
    }
    return row;
  }

  // how many of the given rows are independent of the base system
  int drop(const std::vector<std::vector<int64_t>>& rows) const
  {
    std::vector<std::vector<int64_t>> residuals;
    for (const auto& r : rows) {
      auto red = reduce_row(r);
      if (std::any_of(red.begin(), red.end(), [](int64_t v) { return v != 0; }))
        residuals.push_back(std::move(red));
    }
    if (residuals.empty()) return 0;
    FpMatrix m(static_cast<int>(residuals.size()), cols, p);
    for (size_t i = 0; i < residuals.size(); ++i)
      for (int j = 0; j < cols; ++j)
        m.at(static_cast<int>(i), j) = residuals[i][static_cast<size_t>(j)];
    return fp_rank_serial(std::move(m));
  }
};

std::vector<int64_t> evaluation_row(int64_t d, int64_t x, int64_t y, int64_t p)
{
  std::vector<int64_t> row(static_cast<size_t>(monomial_count(d)), 0);
  std::vector<int64_t> xp(static_cast<size_t>(d) + 1, 1);
  std::vector<int64_t> yp(static_cast<size_t>(d) + 1, 1);
  for (int64_t e = 1; e <= d; ++e) {
    xp[static_cast<size_t>(e)] = mod_mul(xp[static_cast<size_t>(e - 1)], x, p);
    yp[static_cast<size_t>(e)] = mod_mul(yp[static_cast<size_t>(e - 1)], y, p);
  }
  for (int64_t a = 0; a <= d; ++a)
    for (int64_t b = 0; b <= d - a; ++b)
      row[monomial_index(d, a, b)] =
          mod_mul(xp[static_cast<size_t>(a)], yp[static_cast<size_t>(b)], p);
  return row;
}

// k rows expressing f(x(t), y(t)) = 0 mod t^k along a germ
std::vector<std::vector<int64_t>> jet_rows(int64_t d, const Series& xt,
                                           const Series& yt, int64_t k,
                                           int64_t p)
{
  const size_t kk = static_cast<size_t>(k);
  std::vector<Series> xpow(static_cast<size_t>(d) + 1, Series(kk, 0));
  std::vector<Series> ypow(static_cast<size_t>(d) + 1, Series(kk, 0));
  xpow[0][0] = 1;
  ypow[0][0] = 1;
  for (int64_t e = 1; e <= d; ++e) {
    xpow[static_cast<size_t>(e)] = series_mul(xpow[static_cast<size_t>(e - 1)], xt, p);
    ypow[static_cast<size_t>(e)] = series_mul(ypow[static_cast<size_t>(e - 1)], yt, p);
  }
  std::vector<std::vector<int64_t>> rows(
      kk, std::vector<int64_t>(static_cast<size_t>(monomial_count(d)), 0));
  for (int64_t a = 0; a <= d; ++a)
    for (int64_t b = 0; b <= d - a; ++b) {
      const Series prod =
          series_mul(xpow[static_cast<size_t>(a)], ypow[static_cast<size_t>(b)], p);
      const size_t col = monomial_index(d, a, b);
      for (size_t j = 0; j < kk; ++j) rows[j][col] = prod[j];
    }
  return rows;
}

struct SystemContext {
  int64_t d = 0;
  int64_t p = 0;
  PointConfiguration cfg;
  RrefContext base;
  std::vector<Curve> kernel;
  int64_t h0 = 0;

  bool is_assigned(int64_t x, int64_t y) const
  {
    for (const auto& q : cfg.points)
      if (q[0] == x && q[1] == y) return true;
    return false;
  }

  bool all_kernel_vanish(int64_t x, int64_t y) const
  {
    for (const auto& f : kernel)
      if (curve_eval(f, x, y, p) != 0) return false;
    return true;
  }
};

// Finite base points of the system, located by scanning x-lines for common
// roots of two kernel elements, then filtering against the whole kernel.
// Falls back to scanning a single section when the pair shares a curve
// component.  Assigned points are excluded.
std::vector<std::array<int64_t, 2>> base_point_candidates(
    const SystemContext& sys, Rng& rng, size_t limit)
{
  std::vector<std::array<int64_t, 2>> out;
  if (sys.kernel.empty()) return out;
  const int64_t p = sys.p;
  if (sys.kernel.size() >= 2) {
    const Curve& u1 = sys.kernel[0];
    const Curve& u2 = sys.kernel[1];
    std::vector<std::pair<int64_t, Poly>> hits;
    const int64_t degenerate_cut = 4 * sys.d * sys.d + 16;
#ifdef _OPENMP
#pragma omp parallel
#endif
    {
      std::vector<std::pair<int64_t, Poly>> local;
#ifdef _OPENMP
#pragma omp for schedule(static) nowait
#endif
      for (int64_t x0 = 0; x0 < p; ++x0) {
        Poly f1 = curve_y_poly(u1, x0, p);
        Poly f2 = curve_y_poly(u2, x0, p);
        if (f1.empty() && f2.empty()) {
          local.emplace_back(x0, Poly{});
          continue;
        }
        Poly g = f1.empty() ? std::move(f2)
                            : (f2.empty() ? std::move(f1)
                                          : poly_gcd(f1, f2, p));
        if (deg(g) >= 1) local.emplace_back(x0, std::move(g));
      }
#ifdef _OPENMP
#pragma omp critical
#endif
      hits.insert(hits.end(), local.begin(), local.end());
    }
    if (static_cast<int64_t>(hits.size()) <= degenerate_cut) {
      std::sort(hits.begin(), hits.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [x0, g] : hits) {
        if (out.size() >= limit) break;
        std::vector<int64_t> ys;
        if (g.empty()) {
          // whole vertical line is shared; probe a few points on it
          for (int64_t t = 0; t < 8; ++t) ys.push_back(rng.below(p));
        } else {
          ys = poly_roots(g, p, rng);
        }
        for (int64_t y : ys) {
          if (out.size() >= limit) break;
          if (sys.is_assigned(x0, y)) continue;
          if (sys.all_kernel_vanish(x0, y)) out.push_back({x0, y});
        }
      }
      return out;
    }
    // fall through to the one-section scan when the pair is degenerate
  }
  // Single section (or shared component): points on {f = 0} that kill the
  // whole kernel.
  const Curve& f = sys.kernel[0];
  int guard = 0;
  while (out.size() < limit && ++guard < 4096) {
    const int64_t x0 = rng.below(p);
    for (int64_t y : poly_roots(curve_y_poly(f, x0, p), p, rng)) {
      if (out.size() >= limit) break;
      if (sys.is_assigned(x0, y)) continue;
      if (sys.all_kernel_vanish(x0, y)) out.push_back({x0, y});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::array<int64_t, 2>> point_on_curve(const Curve& g,
                                                     const SystemContext& sys,
                                                     Rng& rng)
{
  for (int tries = 0; tries < 512; ++tries) {
    const int64_t x0 = rng.below(sys.p);
    const auto roots = poly_roots(curve_y_poly(g, x0, sys.p), sys.p, rng);
    for (int64_t y : roots)
      if (!sys.is_assigned(x0, y)) return std::array<int64_t, 2>{x0, y};
  }
  return std::nullopt;
}

// The residual intersection of a section through z with the curve: the
// divisor cut on the curve by any section vanishing at z contains z plus
// the points the whole subsystem through z passes through.
std::vector<std::array<int64_t, 2>> residual_partners(
    const SystemContext& sys, const Curve& g,
    const std::array<int64_t, 2>& z, Rng& rng)
{
  std::vector<std::array<int64_t, 2>> partners;
  const int64_t p = sys.p;
  int lead = -1;
  for (size_t i = 0; i < sys.kernel.size(); ++i)
    if (curve_eval(sys.kernel[i], z[0], z[1], p) != 0) {
      lead = static_cast<int>(i);
      break;
    }
  if (lead < 0) return partners; // z is itself a base point
  const int64_t fz = curve_eval(sys.kernel[static_cast<size_t>(lead)], z[0],
                                z[1], p);
  for (size_t j = 0; j < sys.kernel.size(); ++j) {
    if (static_cast<int>(j) == lead) continue;
    const int64_t gz = curve_eval(sys.kernel[j], z[0], z[1], p);
    // v = f_j - (f_j(z)/f_lead(z)) f_lead vanishes at z
    Curve v;
    v.d = sys.d;
    v.c.resize(sys.kernel[j].c.size());
    const int64_t scale = mod_mul(gz, mod_inv(fz, p), p);
    for (size_t t = 0; t < v.c.size(); ++t)
      v.c[t] = mod_norm(sys.kernel[j].c[t] -
                            mod_mul(scale, sys.kernel[static_cast<size_t>(lead)].c[t], p),
                        p);
    const Poly res = bivariate_resultant_x(v, g, p);
    if (res.empty() || deg(res) <= 0) continue; // degenerate combo
    for (int64_t xw : poly_roots(res, p, rng)) {
      Poly vy = curve_y_poly(v, xw, p);
      Poly gy = curve_y_poly(g, xw, p);
      if (vy.empty() || gy.empty()) continue;
      for (int64_t yw : poly_roots(poly_gcd(vy, gy, p), p, rng)) {
        const std::array<int64_t, 2> w{xw, yw};
        if (w == z || sys.is_assigned(xw, yw)) continue;
        partners.push_back(w);
      }
    }
    if (!partners.empty()) break;
  }
  std::sort(partners.begin(), partners.end());
  partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
  return partners;
}

// gradient of g at z, for the tangent direction of a smooth curve point
std::optional<std::array<int64_t, 2>> curve_tangent(const Curve& g,
                                                    const std::array<int64_t, 2>& z,
                                                    int64_t p)
{
  int64_t gx = 0, gy = 0;
  for (int64_t a = 0; a <= g.d; ++a)
    for (int64_t b = 0; b <= g.d - a; ++b) {
      const int64_t c = g.c[monomial_index(g.d, a, b)];
      if (c == 0) continue;
      if (a >= 1)
        gx = mod_norm(gx + mod_mul(mod_mul(c, a % p, p),
                                   mod_mul(mod_pow(z[0], a - 1, p),
                                           mod_pow(z[1], b, p), p),
                                   p),
                      p);
      if (b >= 1)
        gy = mod_norm(gy + mod_mul(mod_mul(c, b % p, p),
                                   mod_mul(mod_pow(z[0], a, p),
                                           mod_pow(z[1], b - 1, p), p),
                                   p),
                      p);
    }
  if (gx == 0 && gy == 0) return std::nullopt;
  // tangent direction (-gy : gx)
  return std::array<int64_t, 2>{mod_norm(-gy, p), gx};
}

} // namespace

ClusterReport sample_cluster_separation(const DivisorClass& h, int64_t k,
                                        int64_t p, int samples, uint64_t seed,
                                        const std::optional<DivisorClass>& on_curve)
{
  if (k < 1) throw std::invalid_argument("sample_cluster_separation: k >= 1");
  if (samples < 1)
    throw std::invalid_argument("sample_cluster_separation: samples >= 1");
  if (!is_prime(p))
    throw std::invalid_argument("sample_cluster_separation: p must be prime");
  if (p >= (int64_t(1) << 31))
    throw std::invalid_argument("sample_cluster_separation: p too large");

  DivisorClass realized = h;
  if (!std::all_of(h.m.begin(), h.m.end(), [](int64_t v) { return v >= 0; }))
    realized = reduce(h).canonical;
  if (realized.d < 0 ||
      !std::all_of(realized.m.begin(), realized.m.end(),
                   [](int64_t v) { return v >= 0; }))
    throw std::invalid_argument(
        "sample_cluster_separation: class has no plane realization");
  if (p <= realized.d)
    throw std::invalid_argument("sample_cluster_separation: need p > d");

  ClusterReport rep;
  rep.cls = h;
  rep.k = k;
  rep.p = p;
  rep.samples = samples;
  rep.seed = seed;
  rep.realized_degree = realized.d;
  rep.realized_mult = realized.m;
  rep.on_curve = on_curve;

  Rng rng(seed);
  SystemContext sys;
  sys.d = realized.d;
  sys.p = p;
  sys.cfg = sample_point_configuration(realized.rank(), p, rng);
  sys.cfg.seed = seed;
  FpMatrix conditions = conditions_matrix(realized.d, realized.m, sys.cfg);
  const int cols = conditions.cols;
  sys.base.p = p;
  sys.base.cols = cols;
  sys.base.rref = std::move(conditions);
  sys.base.pivots = fp_rref(sys.base.rref);
  for (auto& v : fp_kernel_basis(sys.base.rref)) { // RREF is idempotent
    Curve c;
    c.d = realized.d;
    c.c = std::move(v);
    sys.kernel.push_back(std::move(c));
  }
  sys.h0 = static_cast<int64_t>(sys.kernel.size());
  rep.h0 = sys.h0;

  int sample_index = 0;
  auto record_failure = [&](const std::string& kind,
                            const std::vector<std::array<int64_t, 2>>& pts,
                            int drop) {
    rep.failed = true;
    rep.failure = ClusterFailure{sample_index, kind,
                                 {pts.begin(), pts.end()}, drop};
  };

  if (sys.h0 == 0) {
    record_failure("system-has-no-sections", {}, 0);
    return rep;
  }

  auto random_point = [&]() {
    while (true) {
      const std::array<int64_t, 2> q{rng.below(p), rng.below(p)};
      if (!sys.is_assigned(q[0], q[1])) return q;
    }
  };

  // returns true when the failure was recorded
  auto test_rows = [&](const std::vector<std::vector<int64_t>>& rows,
                       const std::string& kind,
                       const std::vector<std::array<int64_t, 2>>& pts) {
    const int drop = sys.base.drop(rows);
    const bool fail = drop < static_cast<int>(k);
    if (fail) record_failure(kind, pts, drop);
    ++sample_index;
    return fail;
  };

  auto test_point_cluster = [&](const std::vector<std::array<int64_t, 2>>& pts,
                                const std::string& kind) {
    std::vector<std::vector<int64_t>> rows;
    for (const auto& q : pts)
      rows.push_back(evaluation_row(sys.d, q[0], q[1], p));
    return test_rows(rows, kind, pts);
  };

  auto distinct_random_cluster = [&](std::vector<std::array<int64_t, 2>> fixed) {
    while (static_cast<int64_t>(fixed.size()) < k) {
      auto q = random_point();
      if (std::find(fixed.begin(), fixed.end(), q) == fixed.end())
        fixed.push_back(q);
    }
    return fixed;
  };

  // deterministic pre-pass: every cluster through a base point fails
  const auto candidates = base_point_candidates(sys, rng, 64);
  rep.base_candidates = static_cast<int>(candidates.size());
  for (const auto& b : candidates) {
    if (sample_index >= samples) break;
    if (test_point_cluster(distinct_random_cluster({b}), "base-point"))
      return rep;
  }

  // optional support curve for the remaining species
  std::optional<Curve> curve;
  if (on_curve) {
    const DivisorClass& oc = *on_curve;
    if (oc.rank() > realized.rank())
      throw std::invalid_argument("sample_cluster_separation: support curve "
                                  "needs more points than the system");
    if (oc.d < 1 ||
        !std::all_of(oc.m.begin(), oc.m.end(), [](int64_t v) { return v >= 0; }))
      throw std::invalid_argument(
          "sample_cluster_separation: support curve must have non-negative "
          "multiplicities");
    PointConfiguration sub;
    sub.p = p;
    sub.seed = seed;
    sub.points.assign(sys.cfg.points.begin(),
                      sys.cfg.points.begin() + oc.rank());
    auto basis = fp_kernel_basis(conditions_matrix(oc.d, oc.m, sub));
    if (basis.empty())
      throw std::invalid_argument(
          "sample_cluster_separation: support curve has no sections");
    Curve g;
    g.d = oc.d;
    g.c = std::move(basis.front());
    curve = std::move(g);
  }

  int species = 0;
  int stall_guard = 0;
  while (sample_index < samples && ++stall_guard < 64 * samples) {
    if (curve) {
      const int mode = species++ % (k == 2 ? 4 : 2);
      if (mode == 0 || mode == 1) {
        // clusters of curve points (odd rounds mix in random plane points)
        std::vector<std::array<int64_t, 2>> pts;
        bool ok = true;
        const int64_t on = mode == 0 ? k : std::max<int64_t>(1, k - 1);
        for (int64_t i = 0; i < on && ok; ++i) {
          auto z = point_on_curve(*curve, sys, rng);
          if (!z || std::find(pts.begin(), pts.end(), *z) != pts.end())
            ok = false;
          else
            pts.push_back(*z);
        }
        if (!ok) continue;
        if (test_point_cluster(distinct_random_cluster(pts), "on-curve-points"))
          return rep;
      } else if (mode == 2) {
        // pair z with the residual intersection of a section through z
        auto z = point_on_curve(*curve, sys, rng);
        if (!z) continue;
        const auto partners = residual_partners(sys, *curve, *z, rng);
        if (partners.empty()) continue;
        if (test_point_cluster({*z, partners.front()}, "on-curve-residual-pair"))
          return rep;
      } else {
        // tangent 2-jet along the curve
        auto z = point_on_curve(*curve, sys, rng);
        if (!z) continue;
        auto tau = curve_tangent(*curve, *z, p);
        if (!tau) continue;
        Series xt{(*z)[0], (*tau)[0]};
        Series yt{(*z)[1], (*tau)[1]};
        if (test_rows(jet_rows(sys.d, xt, yt, 2, p), "on-curve-tangent-jet",
                      {*z}))
          return rep;
      }
      continue;
    }
    const int mode = species++ % 2;
    if (mode == 0 || k == 1) {
      if (test_point_cluster(distinct_random_cluster({}), "random-points"))
        return rep;
    } else {
      // curvilinear jet: t -> z + A (t, c2 t^2 + ... + c_k t^k)
      const auto z = random_point();
      int64_t a11, a12, a21, a22;
      do {
        a11 = rng.below(p);
        a12 = rng.below(p);
        a21 = rng.below(p);
        a22 = rng.below(p);
      } while (mod_norm(mod_mul(a11, a22, p) - mod_mul(a12, a21, p), p) == 0);
      Series u(static_cast<size_t>(k), 0); // (t, c2 t^2, ...)
      Series xt(static_cast<size_t>(k), 0);
      Series yt(static_cast<size_t>(k), 0);
      u[1 % k] = 1;
      xt[0] = z[0];
      yt[0] = z[1];
      for (size_t j = 1; j < static_cast<size_t>(k); ++j) {
        const int64_t cj = j >= 2 ? rng.below(p) : 0;
        // x += a11 * t-part + a12 * higher part; assembled directly:
        xt[j] = mod_norm(xt[j] + mod_mul(a11, u[j], p) +
                             (j >= 2 ? mod_mul(a12, cj, p) : 0),
                         p);
        yt[j] = mod_norm(yt[j] + mod_mul(a21, u[j], p) +
                             (j >= 2 ? mod_mul(a22, cj, p) : 0),
                         p);
      }
      if (test_rows(jet_rows(sys.d, xt, yt, k, p), "curvilinear-jet", {z}))
        return rep;
    }
  }
  return rep;
}

} // namespace picx::ff
