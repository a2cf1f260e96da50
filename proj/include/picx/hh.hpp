#ifndef PICX_HH_HPP
#define PICX_HH_HPP

#include <optional>

#include "picx/divisor.hpp"
#include "picx/weyl.hpp"

namespace picx {

// Predictions conditional on the Harbourne-Hirschowitz conjecture (a
// theorem for rank <= 9): reduce, split off the multiples of exceptional
// curves, and read h0 from the Euler characteristic of the standard part.

struct H0Prediction {
  int64_t h0 = 0;
  int64_t h1 = 0; // meaningful for effective classes: h1 = h0 - chi
  int64_t chi = 0;
  bool effective = false;
  bool special = false;
  bool conditional = false; // rank >= 10: conjecture not proven there
  std::optional<OrthogonalDecomposition> decomposition;
};

/// Rule: not effective when the reduction is neither standard nor
/// semi-standard; otherwise h0 = max(0, chi(A)) for the standard part A of
/// the orthogonal decomposition, and effective means h0 > 0.  Standard
/// classes are non-special with h2 = 0, so h0 = chi there; the fixed
/// exceptional multiples contribute h1 = sum n_i(n_i-1)/2.
H0Prediction predicted_h0(const DivisorClass& h);

/// Effective with h1 > 0; equivalently some exceptional curve meets the
/// class in <= -2.
bool is_special(const DivisorClass& h);

enum class StructureKind { Zero, Positive, PencilMultiple, EllipticMultiple };

const char* to_string(StructureKind k);

/// The shape of the standard part of an effective class: positive
/// (A^2 > 0, integral), a multiple b*E of a pencil class (A^2 = 0,
/// A.K = -2b), a multiple m*C9 of the elliptic class (A^2 = A.K = 0), or
/// zero.
struct StructureReport {
  DivisorClass standard_part;
  std::vector<std::pair<int64_t, DivisorClass>> exceptional_pieces;
  StructureKind kind = StructureKind::Zero;
  int64_t multiple = 0;        // b or m for the two multiple kinds
  std::optional<DivisorClass> base; // the pencil / elliptic class
};

StructureReport structure_decompose(const DivisorClass& h);

/// Standard, positive self-intersection, and positive on E_r (the minimum
/// over all exceptional curves).  Rank >= 3.
bool is_ample(const DivisorClass& h);

/// Standard classes are exactly the nef ones.  Rank >= 3.
bool is_nef(const DivisorClass& h);

} // namespace picx

#endif
