#ifndef PICX_SEPARATION_HPP
#define PICX_SEPARATION_HPP

#include <optional>
#include <vector>

#include "picx/catalog.hpp"
#include "picx/divisor.hpp"
#include "picx/weyl.hpp"

namespace picx {

// Conjectural numerical test for separation of k-clusters: a standard class
// H with chi >= 3k and m_r >= k-1 separates k-clusters iff H.E clears the
// genus-dependent threshold on every standard isolated curve E of genus
// 1 <= a <= 4k/3, including curves that only exist after extending the
// configuration by delta extra points.

/// 2a-1+k for a <= k, a+2k-1 for k < a <= floor(4k/3).
int64_t separation_threshold(int64_t k, int64_t a);

/// Extension depth so that r + delta reaches rank 9 + 3*floor(4k/3).
int default_delta_max(int r, int64_t k);
/// Per-genus enumeration bound 3(a + 2k).
int64_t default_isolated_d_max(int64_t k, int64_t a);

struct SeparationViolation {
  DivisorClass curve; // at rank r + delta
  int64_t genus = 0;
  int64_t threshold = 0;
  int64_t value = 0; // H.E
  int delta = 0;
};

struct SeparationHypotheses {
  bool standard = false;
  bool chi_at_least_3k = false;
  bool mr_at_least_k_minus_1 = false; // the genus-0 condition
  bool all() const { return standard && chi_at_least_3k && mr_at_least_k_minus_1; }
};

enum class SeparationVerdict { Passes, Fails, HypothesesNotMet };

const char* to_string(SeparationVerdict v);

struct SeparationReport {
  SeparationVerdict verdict = SeparationVerdict::HypothesesNotMet;
  int64_t k = 0;
  int64_t chi = 0;
  DivisorClass canonical;
  SeparationHypotheses hypotheses;
  std::vector<SeparationViolation> violations;
  int delta_used = 0;
  std::vector<std::pair<int64_t, int64_t>> d_max_used; // (genus, bound)
};

/// Reduce H, check the hypotheses, then collect every threshold violation
/// over the isolated-curve catalogs at ranks r..r+delta_max.  Negative
/// delta_max / d_max select the defaults.  Violations are reported against
/// the canonical form.
SeparationReport check_separation(const DivisorClass& h, int64_t k,
                                  int delta_max = -1, int64_t d_max = -1);

enum class AdjunctionVerdict { Separates, Inconclusive, Obstructed };

const char* to_string(AdjunctionVerdict v);

struct AdjunctionReport {
  AdjunctionVerdict verdict = AdjunctionVerdict::Inconclusive;
  bool nef_big = false;
  bool square_bound = false; // (H-K)^2 >= 4k+1
  std::optional<DivisorClass> obstruction;
  std::optional<SeparationViolation> obstruction_data; // H.D and bounds
  int64_t search_bound = 0;
};

/// Sufficient adjunction-theoretic criterion: H-K nef and big with
/// (H-K)^2 >= 4k+1 separates k-clusters unless some effective D has
/// H-K-2D effective, H.D <= 2p-2+k and 2p-2+D^2 < H.D < 2k+D.K.
/// Candidates D are assembled from the catalog (isolated curves, pencil
/// and line multiples, exceptional pieces) up to the search bound; verdict
/// `Separates` means no candidate was found within that bound.
AdjunctionReport adjunction_check(const DivisorClass& h, int64_t k,
                                  int64_t search_bound = -1);

struct FailingClass {
  DivisorClass cls;
  std::vector<SeparationViolation> violations;
};

/// Standard classes at rank r with m_r >= 1, chi >= chi_min and d <= d_max
/// that violate a genus-1 or genus-2 threshold on an isolated curve at that
/// rank.  k must be 1 or 2, r >= 9.
std::vector<FailingClass> search_failing_classes(int r, int64_t k,
                                                 int64_t d_max,
                                                 int64_t chi_min);
std::vector<FailingClass> search_failing_classes_reference(int r, int64_t k,
                                                           int64_t d_max,
                                                           int64_t chi_min);

} // namespace picx

#endif
