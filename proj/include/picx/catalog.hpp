#ifndef PICX_CATALOG_HPP
#define PICX_CATALOG_HPP

#include <vector>

#include "picx/divisor.hpp"
#include "picx/weyl.hpp"

namespace picx {

// Named class families from the surface-geometry catalog:
//   exceptional curves      E^2 = E.K = -1
//   rational orbit types    E_r, E0-E1, E0, 2E0, dE0-(d-1)E1-E2, dE0-(d-1)E1
//   elliptic class          C9 = 3E0 - E1 - ... - E9
//   genus-two isolated      G1, G2, G3
// Enumerations are exact integer searches over sorted multiplicity vectors
// with sum / square-sum constraints.

enum class RationalOrbitTag {
  Exceptional, // E_r             E^2 = -1
  Pencil,      // E0 - E1         E^2 = 0
  Line,        // E0              E^2 = 1
  Conic,       // 2E0             E^2 = 4
  MultiA,      // dE0-(d-1)E1-E2  E^2 = 2d-2  (d=2 is the quadratic class)
  MultiB,      // dE0-(d-1)E1     E^2 = 2d-1
};

struct RationalOrbitKind {
  RationalOrbitTag tag;
  int64_t degree = 0; // d for MultiA / MultiB
};

const char* to_string(RationalOrbitTag t);
std::string describe(const RationalOrbitKind& k);

/// Which orbit representative a rational class reduces to.  The two
/// self-intersection-4 types (2E0 vs 3E0-2E1-E2) have distinct canonical
/// forms, so reduction separates them.  Requires E^2 = -2 - E.K >= -1.
RationalOrbitKind classify_rational_orbit(const DivisorClass& e);

/// E^2 = E.K = -1 and the reduction decomposes as 0 + 1*F.
bool is_exceptional(const DivisorClass& e);

/// All sorted solutions of d^2 - sum m^2 = -1 = -3d + sum m with
/// 0 <= d <= d_max and m_i >= 0, plus the d = 0 class E_r.  One entry per
/// orbit type; the member count of a type is the number of distinct
/// permutations of its multiplicities.
std::vector<DivisorClass> enumerate_exceptional(int r, int64_t d_max);
std::vector<DivisorClass> enumerate_exceptional_reference(int r, int64_t d_max);

/// Rational pencil / line types (E^2 = 0 resp. 1, genus 0), same format.
std::vector<DivisorClass> enumerate_pencil_classes(int r, int64_t d_max);
std::vector<DivisorClass> enumerate_line_classes(int r, int64_t d_max);

struct IsolatedCurve {
  DivisorClass cls;
  int64_t genus = 0;
  // genus <= 4 classes are classified curves; higher genus is certified at
  // the lattice level only.
  bool lattice_level = false;
};

struct IsolatedEnumeration {
  std::vector<IsolatedCurve> curves;
  // true when the square-sum bound proves no further primitive solutions
  // exist above d_max
  bool complete = false;
  int64_t completeness_bound = -1;
};

/// E-standard primitive classes with E^2 = a-1 = E.K and d <= d_max, i.e.
/// the lattice candidates for integral isolated curves of genus a >= 1.
/// Multiples k*F are excluded (they are never integral).
IsolatedEnumeration enumerate_isolated(int64_t a, int r, int64_t d_max);
std::vector<DivisorClass> enumerate_isolated_reference(int64_t a, int r,
                                                       int64_t d_max);

struct GeneratingDecomposition {
  int64_t a = 0;              // coefficient of E0
  int64_t b = 0;              // coefficient of E0 - E1
  int64_t c = 0;              // coefficient of 2E0 - E1 - E2
  std::vector<int64_t> alpha; // alpha[i] multiplies C_{i+3}, i = 0..r-3
};

/// Coordinates of an E-standard class in the generating classes
/// E0, E0-E1, 2E0-E1-E2, C_3..C_r; all coefficients are >= 0 exactly when
/// the class is E-standard.  Throws on non-standard input.
GeneratingDecomposition generating_decomposition(const DivisorClass& h);
DivisorClass reconstruct_from_generating(const GeneratingDecomposition& g, int r);

// catalog constants
DivisorClass C9_class();
DivisorClass G1_class(); // 4E0-2E1-E2-...-E12
DivisorClass G2_class(); // 6E0-2E1-...-2E8-E9-E10-E11
DivisorClass G3_class(); // 9E0-3E1-...-3E8-2E9-2E10

} // namespace picx

#endif
