#ifndef PICX_WEYL_HPP
#define PICX_WEYL_HPP

#include <utility>
#include <vector>

#include "picx/divisor.hpp"

namespace picx {

// The Weyl group W_r acts on the class lattice by the orthogonal
// reflections in the roots
//   root 0:  E0 - E1 - E2 - E3          (needs r >= 3)
//   root i:  E_i - E_{i+1}, 1 <= i < r  (swaps the multiplicities m_i, m_{i+1})
// Reflection in root 0 is the quadratic (Cremona) transformation
// d -> 2d - m1 - m2 - m3.

enum class Standardness { Standard, SemiStandard, Neither };

const char* to_string(Standardness s);

/// Root index -> its class vector.  Throws when the index needs more
/// points than the rank provides.
DivisorClass root_class(int index, int r);

/// H + <root, H> * root.  An involution; preserves the pairing, fixes K.
DivisorClass reflect(const DivisorClass& h, int root_index);

/// A word in the generators, applied left to right.
using WeylWord = std::vector<int>;

DivisorClass apply_word(const DivisorClass& h, const WeylWord& word);

struct ReductionResult {
  DivisorClass canonical;
  WeylWord word; // applying `word` to the input yields `canonical`
  Standardness standardness = Standardness::Neither;
};

/// Noether reduction: sort the multiplicities (recording adjacent
/// transpositions) and apply root 0 while d >= 0 and d < m1+m2+m3.  Each
/// quadratic step strictly decreases d, so the loop terminates with either
/// d < 0 or d >= m1+m2+m3.  For r < 3 only the sort is performed.
/// The canonical form is a complete orbit invariant for standard and
/// semi-standard classes; for the remaining classes it is just some
/// terminal form of the descent (non-effective classes need no certificate
/// beyond d < 0 or d < m1).
ReductionResult reduce(const DivisorClass& h);

/// Standardness of the reduced canonical form.  Standard classes satisfy
/// d >= m1 >= ... >= mr >= 0, d >= m1+m2, d >= m1+m2+m3; semi-standard
/// classes relax to d >= 0, d >= m1, d >= m1+m2+m3 with negative trailing
/// multiplicities allowed.
Standardness classify_standardness(const DivisorClass& h);

/// True when `h` literally satisfies the standard inequalities in the given
/// basis (multiplicities already sorted non-increasing).
bool is_e_standard(const DivisorClass& h);
bool is_e_semistandard(const DivisorClass& h);

/// A semi-standard class written as an orthogonal sum A + sum_i n_i F_i
/// with A standard, n_i > 0 and the F_i pairwise orthogonal exceptional
/// classes.  The decomposition is unique.
struct OrthogonalDecomposition {
  DivisorClass standard_part;
  std::vector<std::pair<int64_t, DivisorClass>> pieces; // (n_i, F_i)
};

/// Decompose in the given basis (after sorting).  Two branches: negative
/// multiplicities split off as n_i E_i, and when d < m1+m2 the unextendable
/// piece (m1+m2-d)(E0-E1-E2) appears with transformed standard part
/// (2d-m1-m2; d-m2, d-m1, 0, ...).  Throws when the sorted input is not
/// E-semi-standard.
OrthogonalDecomposition semistandard_decompose(const DivisorClass& h);

/// min over the Weyl orbit of D of H.sigma(D), for E-standard H: attained
/// at the E-semi-standard rewrite of D, i.e. intersect(H, reduce(D).canonical).
int64_t orbit_pairing_minimum(const DivisorClass& h, const DivisorClass& d);

/// For a sorted non-negative solution of d^2 - sum m_i^2 = -1 = -3d + sum m_i:
/// whether d < m1 + m2 + m3.  Preconditions checked, errors thrown.
bool noether_inequality_holds(const DivisorClass& e);

/// Full Weyl orbit of a class, breadth-first to closure.  Only for small
/// rank; refuses r > 6 (W_7 and W_8 are astronomically large and W_r is
/// infinite for r >= 9).
std::vector<DivisorClass> orbit_closure(const DivisorClass& d);

} // namespace picx

#endif
