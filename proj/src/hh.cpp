#include "picx/hh.hpp"

#include <stdexcept>

#include "picx/catalog.hpp"
#include "picx/overflow.hpp"

namespace picx {

H0Prediction predicted_h0(const DivisorClass& h)
{
  H0Prediction pred;
  pred.chi = euler_characteristic(h);
  pred.conditional = h.rank() >= 10;
  const ReductionResult red = reduce(h);
  if (red.standardness == Standardness::Neither) return pred;
  OrthogonalDecomposition dec = semistandard_decompose(red.canonical);
  const int64_t chi_std = euler_characteristic(dec.standard_part);
  if (chi_std <= 0) return pred;
  pred.h0 = chi_std;
  pred.effective = true;
  pred.h1 = checked_sub(pred.h0, pred.chi);
  pred.special = pred.h1 > 0;
  pred.decomposition = std::move(dec);
  return pred;
}

bool is_special(const DivisorClass& h) { return predicted_h0(h).special; }

const char* to_string(StructureKind k)
{
  switch (k) {
    case StructureKind::Zero: return "zero";
    case StructureKind::Positive: return "positive";
    case StructureKind::PencilMultiple: return "pencil-multiple";
    case StructureKind::EllipticMultiple: return "elliptic-multiple";
  }
  return "?";
}

StructureReport structure_decompose(const DivisorClass& h)
{
  H0Prediction pred = predicted_h0(h);
  if (!pred.effective)
    throw std::invalid_argument("structure_decompose: class is not effective");
  StructureReport rep;
  rep.standard_part = pred.decomposition->standard_part;
  rep.exceptional_pieces = pred.decomposition->pieces;
  const DivisorClass& a = rep.standard_part;
  if (a.is_zero()) {
    rep.kind = StructureKind::Zero;
    return rep;
  }
  const int64_t sq = self_intersection(a);
  const int64_t ak = intersect(a, canonical_class(a.rank()));
  if (sq > 0) {
    rep.kind = StructureKind::Positive;
    return rep;
  }
  if (sq != 0 || ak > 0)
    throw std::logic_error("structure_decompose: effective standard part "
                           "with negative square");
  if (ak == 0) {
    // Only multiples of the plane cubic class have A^2 = A.K = 0 among
    // standard classes, so A = (d/3) * C9 in this basis.
    rep.kind = StructureKind::EllipticMultiple;
    rep.multiple = a.d / 3;
    DivisorClass base = pullback_extend(C9_class(), a.rank() - 9);
    if (a.rank() < 9 || !(rep.multiple * base == a))
      throw std::logic_error("structure_decompose: elliptic part is not a "
                             "multiple of the cubic class");
    rep.base = std::move(base);
    return rep;
  }
  rep.kind = StructureKind::PencilMultiple;
  rep.multiple = -ak / 2;
  DivisorClass base(0, std::vector<int64_t>(a.rank(), 0));
  if (a.d % rep.multiple != 0)
    throw std::logic_error("structure_decompose: pencil part not divisible");
  base.d = a.d / rep.multiple;
  for (int i = 0; i < a.rank(); ++i) {
    if (a.m[i] % rep.multiple != 0)
      throw std::logic_error("structure_decompose: pencil part not divisible");
    base.m[i] = a.m[i] / rep.multiple;
  }
  rep.base = std::move(base);
  return rep;
}

bool is_ample(const DivisorClass& h)
{
  if (h.rank() < 3) throw std::invalid_argument("is_ample: rank >= 3");
  const ReductionResult red = reduce(h);
  return red.standardness == Standardness::Standard &&
         self_intersection(h) > 0 && red.canonical.m.back() >= 1;
}

bool is_nef(const DivisorClass& h)
{
  if (h.rank() < 3) throw std::invalid_argument("is_nef: rank >= 3");
  return classify_standardness(h) == Standardness::Standard;
}

} // namespace picx
