#ifndef PICX_FF_HPP
#define PICX_FF_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "picx/divisor.hpp"

namespace picx::ff {

// Brute-force oracle over a large prime field: realize a class as the
// system of plane curves of degree d with assigned multiplicities at random
// points, compute the kernel of the conditions matrix, and probe cluster
// separation by adding evaluation / jet rows.

/// Deterministic RNG wrapper; bounded draws use rejection so replay is
/// bit-identical across platforms.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next() { return eng(); }
  std::int64_t below(std::int64_t n);
};

bool is_prime(std::int64_t p);

struct PointConfiguration {
  std::int64_t p = 0;
  std::vector<std::array<std::int64_t, 2>> points; // affine chart z = 1
  std::uint64_t seed = 0;
};

/// Distinct points with no collinear triple; offending draws are rejected.
PointConfiguration sample_point_configuration(int r, std::int64_t p, Rng& rng);

struct FpMatrix {
  int rows = 0;
  int cols = 0;
  std::int64_t p = 0;
  std::vector<std::int64_t> a;

  FpMatrix() = default;
  FpMatrix(int r, int c, std::int64_t mod)
      : rows(r), cols(c), p(mod), a(static_cast<size_t>(r) * c, 0) {}
  std::int64_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  std::int64_t at(int i, int j) const
  {
    return a[static_cast<size_t>(i) * cols + j];
  }
};

/// Dense Gaussian elimination mod p.  fp_rank parallelizes the row updates
/// when OpenMP is enabled; fp_rank_serial is the reference kept for tests.
int fp_rank(FpMatrix m);
int fp_rank_serial(FpMatrix m);

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> fp_rref(FpMatrix& m);
/// Kernel basis from the RREF, one vector per free column, deterministic.
std::vector<std::vector<std::int64_t>> fp_kernel_basis(const FpMatrix& m);

int monomial_count(std::int64_t d);

/// Rows: all Taylor coefficients of order < mult[i] at point i (shifted
/// monomial expansion, exact for p > d).  Columns: degree-d monomials.
FpMatrix conditions_matrix(std::int64_t d, const std::vector<std::int64_t>& mult,
                           const PointConfiguration& cfg);

/// A realized plane interpolation problem: degree-d curves with assigned
/// multiplicities at the configuration points.  rows = sum m_i(m_i+1)/2,
/// cols = (d+1)(d+2)/2, and the section count is the kernel dimension.
struct InterpolationSystem {
  std::int64_t degree = 0;
  std::vector<std::int64_t> mult;
  std::int64_t p = 0;
  PointConfiguration points;
  FpMatrix conditions;

  std::int64_t kernel_dimension() const
  {
    return monomial_count(degree) - fp_rank(conditions);
  }
};

InterpolationSystem build_interpolation_system(
    std::int64_t d, const std::vector<std::int64_t>& mult,
    const PointConfiguration& cfg);

/// Minimum kernel dimension over `trials` fresh point configurations.
std::int64_t actual_h0(std::int64_t d, const std::vector<std::int64_t>& mult,
                       std::int64_t p, int trials, std::uint64_t seed);

struct HhVerification {
  DivisorClass cls;
  std::int64_t predicted = 0;
  std::int64_t actual = 0;
  std::int64_t chi = 0;
  bool agree = false;
  std::int64_t p = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::int64_t realized_degree = 0;
  std::vector<std::int64_t> realized_mult;
};

/// Compare the conjectural h0 with the interpolation oracle.  The class
/// must have non-negative multiplicities, directly or after reduction.
HhVerification verify_hh_prediction(const DivisorClass& h, std::int64_t p,
                                    int trials, std::uint64_t seed);

struct ClusterFailure {
  int sample_index = 0;
  std::string kind;
  std::vector<std::array<std::int64_t, 2>> points;
  int rank_drop = 0;
};

struct ClusterReport {
  DivisorClass cls;
  std::int64_t k = 0;
  std::int64_t p = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::int64_t h0 = 0;
  std::int64_t realized_degree = 0;
  std::vector<std::int64_t> realized_mult;
  int base_candidates = 0; // base points located by the elimination pre-pass
  bool failed = false;
  std::optional<ClusterFailure> failure;
  std::optional<DivisorClass> on_curve;
};

/// Sample length-k clusters and check that each drops the section count by
/// exactly k.  Species: finite base points located by elimination (any
/// cluster through one fails), k distinct random points, order-k curvilinear
/// jets, and, when `on_curve` is given, clusters supported on that curve
/// (points, residual pairs cut out by a section through a sampled point,
/// tangent jets).  Stops at the first failing cluster.
ClusterReport sample_cluster_separation(
    const DivisorClass& h, std::int64_t k, std::int64_t p, int samples,
    std::uint64_t seed,
    const std::optional<DivisorClass>& on_curve = std::nullopt);

} // namespace picx::ff

#endif
