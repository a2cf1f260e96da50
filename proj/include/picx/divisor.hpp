#ifndef PICX_DIVISOR_HPP
#define PICX_DIVISOR_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace picx {

using std::int64_t;

/// A divisor class d*E0 - m1*E1 - ... - mr*Er on the blow-up of the plane
/// at r points, stored as the vector (d; m1,...,mr).  Note the sign
/// convention: `m` holds the *negated* coefficients of the E_i, so the
/// basis class E_i itself is stored with m_i = -1, and the canonical class
/// -3E0 + E1 + ... + Er is stored as (-3; -1,...,-1).
struct DivisorClass {
  int64_t d = 0;
  std::vector<int64_t> m;

  DivisorClass() = default;
  DivisorClass(int64_t degree, std::vector<int64_t> mult)
      : d(degree), m(std::move(mult)) {}

  int rank() const { return static_cast<int>(m.size()); }
  bool is_zero() const;

  bool operator==(const DivisorClass&) const = default;
};

// Exact lattice arithmetic; throws std::overflow_error on wraparound and
// std::invalid_argument when ranks disagree.
DivisorClass operator+(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a, const DivisorClass& b);
DivisorClass operator-(const DivisorClass& a);
DivisorClass operator*(int64_t n, const DivisorClass& a);

/// Intersection pairing A.B = dA*dB - sum_i m_{A,i} m_{B,i}.
int64_t intersect(const DivisorClass& a, const DivisorClass& b);

int64_t self_intersection(const DivisorClass& h);

/// K_r = -3E0 + E1 + ... + Er, so K_r^2 = 9 - r.
DivisorClass canonical_class(int r);
DivisorClass anticanonical_class(int r);

/// E0 (the line class of the fixed plane model).
DivisorClass line_class(int r);
/// E_i for 1 <= i <= r, stored with m_i = -1.
DivisorClass point_class(int i, int r);
/// C_i = 3E0 - E1 - ... - E_i (the elliptic generating class), 3 <= i <= r.
DivisorClass elliptic_generating_class(int i, int r);

/// chi(O(H)) = (H^2 - H.K)/2 + 1 by Riemann-Roch.
int64_t euler_characteristic(const DivisorClass& h);

/// p(H) = (H^2 + H.K)/2 + 1, the arithmetic genus.
int64_t arithmetic_genus(const DivisorClass& h);

/// Append delta zero multiplicities: the same class viewed on the blow-up
/// of delta additional points.  Intersection numbers against classes
/// supported on the first r points are unchanged.
DivisorClass pullback_extend(const DivisorClass& h, int delta);

/// Text form "d;m1,m2,...,mr" (no spaces); parse accepts optional blanks.
std::string to_text(const DivisorClass& h);
DivisorClass parse_class(std::string_view text);

std::vector<int64_t> sorted_multiplicities(const DivisorClass& h);

} // namespace picx

#endif
