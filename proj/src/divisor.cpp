#include "picx/divisor.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <stdexcept>

#include "picx/overflow.hpp"

namespace picx {

namespace {

void require_same_rank(const DivisorClass& a, const DivisorClass& b,
                       const char* op)
{
  if (a.rank() != b.rank())
    throw std::invalid_argument(std::string(op) + ": rank mismatch (" +
                                std::to_string(a.rank()) + " vs " +
                                std::to_string(b.rank()) + ")");
}

} // namespace

bool DivisorClass::is_zero() const
{
  if (d != 0) return false;
  return std::all_of(m.begin(), m.end(), [](int64_t v) { return v == 0; });
}

DivisorClass operator+(const DivisorClass& a, const DivisorClass& b)
{
  require_same_rank(a, b, "add");
  DivisorClass r(checked_add(a.d, b.d), a.m);
  for (int i = 0; i < a.rank(); ++i) r.m[i] = checked_add(a.m[i], b.m[i]);
  return r;
}

DivisorClass operator-(const DivisorClass& a, const DivisorClass& b)
{
  require_same_rank(a, b, "subtract");
  DivisorClass r(checked_sub(a.d, b.d), a.m);
  for (int i = 0; i < a.rank(); ++i) r.m[i] = checked_sub(a.m[i], b.m[i]);
  return r;
}

DivisorClass operator-(const DivisorClass& a)
{
  DivisorClass r(checked_neg(a.d), a.m);
  for (auto& v : r.m) v = checked_neg(v);
  return r;
}

DivisorClass operator*(int64_t n, const DivisorClass& a)
{
  DivisorClass r(checked_mul(n, a.d), a.m);
  for (auto& v : r.m) v = checked_mul(n, v);
  return r;
}

int64_t intersect(const DivisorClass& a, const DivisorClass& b)
{
  require_same_rank(a, b, "intersect");
  int64_t acc = checked_mul(a.d, b.d);
  for (int i = 0; i < a.rank(); ++i)
    acc = checked_sub(acc, checked_mul(a.m[i], b.m[i]));
  return acc;
}

int64_t self_intersection(const DivisorClass& h) { return intersect(h, h); }

DivisorClass canonical_class(int r)
{
  if (r < 0) throw std::invalid_argument("canonical_class: negative rank");
  return DivisorClass(-3, std::vector<int64_t>(r, -1));
}

DivisorClass anticanonical_class(int r)
{
  if (r < 0) throw std::invalid_argument("anticanonical_class: negative rank");
  return DivisorClass(3, std::vector<int64_t>(r, 1));
}

DivisorClass line_class(int r)
{
  if (r < 0) throw std::invalid_argument("line_class: negative rank");
  return DivisorClass(1, std::vector<int64_t>(r, 0));
}

DivisorClass point_class(int i, int r)
{
  if (r < 1 || i < 1 || i > r)
    throw std::invalid_argument("point_class: index out of range");
  DivisorClass e(0, std::vector<int64_t>(r, 0));
  e.m[i - 1] = -1;
  return e;
}

DivisorClass elliptic_generating_class(int i, int r)
{
  if (i < 3 || i > r)
    throw std::invalid_argument("elliptic_generating_class: need 3 <= i <= r");
  DivisorClass c(3, std::vector<int64_t>(r, 0));
  for (int j = 0; j < i; ++j) c.m[j] = 1;
  return c;
}

int64_t euler_characteristic(const DivisorClass& h)
{
  const int64_t k = intersect(h, canonical_class(h.rank()));
  const int64_t s = checked_sub(self_intersection(h), k);
  assert(s % 2 == 0); // d(d+3) - sum m_i(m_i+1) is always even
  return checked_add(s / 2, 1);
}

int64_t arithmetic_genus(const DivisorClass& h)
{
  const int64_t k = intersect(h, canonical_class(h.rank()));
  const int64_t s = checked_add(self_intersection(h), k);
  assert(s % 2 == 0);
  return checked_add(s / 2, 1);
}

DivisorClass pullback_extend(const DivisorClass& h, int delta)
{
  if (delta < 0) throw std::invalid_argument("pullback_extend: negative delta");
  DivisorClass r = h;
  r.m.resize(r.m.size() + static_cast<size_t>(delta), 0);
  return r;
}

std::string to_text(const DivisorClass& h)
{
  std::string s = std::to_string(h.d);
  s += ';';
  for (int i = 0; i < h.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(h.m[i]);
  }
  return s;
}

namespace {

int64_t parse_int(std::string_view tok)
{
  size_t a = tok.find_first_not_of(" \t");
  size_t b = tok.find_last_not_of(" \t");
  if (a == std::string_view::npos)
    throw std::invalid_argument("class literal: empty integer");
  tok = tok.substr(a, b - a + 1);
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("class literal: bad integer '" +
                                std::string(tok) + "'");
  return value;
}

} // namespace

DivisorClass parse_class(std::string_view text)
{
  const size_t semi = text.find(';');
  if (semi == std::string_view::npos)
    throw std::invalid_argument("class literal: expected \"d;m1,m2,...\"");
  DivisorClass h;
  h.d = parse_int(text.substr(0, semi));
  std::string_view rest = text.substr(semi + 1);
  // allow "4;" and trailing whitespace for an empty multiplicity list
  if (rest.find_first_not_of(" \t") == std::string_view::npos) return h;
  while (true) {
    const size_t comma = rest.find(',');
    h.m.push_back(parse_int(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return h;
}

std::vector<int64_t> sorted_multiplicities(const DivisorClass& h)
{
  std::vector<int64_t> s = h.m;
  std::stable_sort(s.begin(), s.end(), std::greater<int64_t>());
  return s;
}

} // namespace picx
