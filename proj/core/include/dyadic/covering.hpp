#pragma once

// Parallelograms with vertical edges on the unit square, sampled at the cell
// centers of a 2^K x 2^K grid: the greedy covering selection, its overlap
// estimates, and the Lipschitz-Kakeya maximal operator.
//
// Grid functions here are indexed at(ix, iy): first index horizontal.

#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/random.hpp"
#include "dyadic/walsh.hpp"

namespace dyadic {

struct Interval {
  double lo = 0;
  double hi = 0;
  double length() const { return hi - lo; }
  bool intersects(const Interval& o) const { return lo <= o.hi && o.lo <= hi; }
};

/// Same center, length multiplied by a.
Interval scaled(const Interval& u, double a);

/// Lower-left vertex (left, base_y); lower edge of the given slope; vertical
/// edges of length height over the shadow [left, left + length).
struct Parallelogram {
  double left = 0;
  double length = 1;
  double base_y = 0;
  double slope = 0;
  double height = 1;

  static Parallelogram over(const DyadicInterval& shadow, double base_y, double slope, double height);

  double area() const { return length * height; }
  double center_x() const { return left + length / 2; }
  double center_y() const { return base_y + slope * length / 2 + height / 2; }
  /// Slopes between those of the two diagonals: length 2H/L, centered at the slope.
  Interval uncertainty() const;
  bool contains(double x, double y) const;
  bool has_dyadic_shadow() const;
};

/// Same center and slope, both side lengths multiplied by a.
Parallelogram side_dilate(const Parallelogram& r, double a);
/// Same center, slope and shadow, height multiplied by c. The covering
/// selection uses this one.
Parallelogram height_dilate(const Parallelogram& r, double c);

/// Cells of one grid column whose centers lie in a parallelogram.
struct ColumnSpan {
  std::uint32_t x = 0;
  std::uint32_t y_begin = 0;
  std::uint32_t y_end = 0;
};
std::vector<ColumnSpan> raster(const Parallelogram& r, int K);
/// Cell count times cell area.
double grid_area(const Parallelogram& r, int K);

class SlopeField {
 public:
  SlopeField() = default;
  /// Values in [-1, 1], indexed at(ix, iy). lipschitz < 0 means no certificate.
  SlopeField(GridFunction2D values, double lipschitz);

  int resolution() const { return u_.resolution(); }
  double at(std::size_t ix, std::size_t iy) const { return u_.at(ix, iy); }
  const GridFunction2D& values() const { return u_; }
  double lipschitz() const { return lip_; }
  bool has_certificate() const { return lip_ >= 0; }

  static SlopeField constant(int K, double c);
  /// u = clamp(a x + b y + c), Lipschitz constant sqrt(a^2 + b^2).
  static SlopeField linear(int K, double a, double b, double c);
  /// A sum of a few random plane waves, clamped to [-1, 1], with a certified
  /// Lipschitz constant close to `lipschitz`.
  static SlopeField random_lipschitz(int K, double lipschitz, Rng& rng);

 private:
  GridFunction2D u_;
  double lip_ = -1;
};

/// L(R) ||u||_Lip <= 1/30; false without a certificate.
bool lipschitz_admissible(const Parallelogram& r, const SlopeField& u);

/// Cells of R whose slope value lies in U(R).
CellSet2D e_set(const Parallelogram& r, const SlopeField& u);
/// |E(R)| / |R| in grid measure; 0 when R covers no cell center.
double density(const Parallelogram& r, const SlopeField& u);
/// The parallelograms with |E(R)| >= delta |R|, in input order.
std::vector<std::size_t> dense_subset(const std::vector<Parallelogram>& rr, const SlopeField& u, double delta);

inline constexpr double kCoverThreshold = 1e-4;
inline constexpr double kCoverDilate = 7.0;

struct CoverStep {
  std::size_t selected = 0;
  /// Inputs removed from the stock at this step, the selected one included.
  std::vector<std::size_t> removed;
  /// For each removed input, the smallest window average of sum 1_{7R'} over
  /// a vertical window through one of its cells; each is >= the threshold.
  std::vector<double> witness;
};

struct CoverResult {
  std::vector<std::size_t> selected;  ///< indices into the input, in selection order
  std::vector<CoverStep> trace;
};

/// Repeatedly select a remaining R of largest shadow (ties: larger height,
/// then input order), then drop every remaining R inside
/// {M_V(sum_{selected} 1_{7R'}) >= 1e-4}.
CoverResult greedy_cover(const std::vector<Parallelogram>& rr, int K);

/// M_V f at every cell: sup over vertical windows of cells containing the cell
/// of the average of |f|.
GridFunction2D vertical_maximal(const GridFunction2D& f);

/// Recomputes sum_{G} 1_{7R'} and M_V from scratch and checks that every input
/// lies in the 1e-4 superlevel set; returns the inputs that do not.
std::vector<std::size_t> cover_violations(const std::vector<Parallelogram>& rr, const std::vector<std::size_t>& selected,
                                          int K);

struct OverlapReport {
  double sum_area = 0;        ///< sum_G |R|
  double e_power = 0;         ///< integral (sum_G 1_{E(R)})^q
  double u_intersecting = 0;  ///< sum over ordered n-tuples with a common slope of |R_1 n ... n R_n|
  double square = 0;          ///< integral (sum_G 1_R)^2
  double e_ratio = 0;         ///< e_power / sum_area
  double u_ratio = 0;         ///< u_intersecting / sum_area
  double square_ratio = 0;    ///< square / (delta^-1 sum_area)
};

OverlapReport overlap_check(const std::vector<Parallelogram>& gg, const SlopeField& u, double q, int n, double delta);

enum class Lemma7R { Contained, NotContained, Inapplicable };
const char* to_string(Lemma7R r);

/// Checks the hypotheses I(R) = I(R'), U(R) n U(R') != empty, R n R' != empty
/// and 7 H(R) <= H(R') on closed parallelograms, then whether the height
/// dilate 7R lies in 7R'. Exact when all inputs are dyadic rationals of
/// moderate bit length.
Lemma7R lemma7r_check(const Parallelogram& r, const Parallelogram& rp);

/// sup over R containing the cell of the average of f over R; 0 off the union.
GridFunction2D lk_maximal(const GridFunction2D& f, const std::vector<Parallelogram>& rr);

/// sup over lambda of lambda |{|f| > lambda}|^(1/p).
double weak_norm(const GridFunction2D& f, double p);

struct ParallelogramEnsemble {
  int min_level = 1;  ///< shadow lengths 2^-max_level .. 2^-min_level
  int max_level = 4;
  double min_height = 1.0 / 64;
  double max_height = 1.0 / 8;
  double max_slope = 1.0;
  /// Values are rounded to multiples of 2^-bits so that vertex arithmetic is exact.
  int bits = 20;
};

Parallelogram random_parallelogram(Rng& rng, const ParallelogramEnsemble& spec);

}  // namespace dyadic
