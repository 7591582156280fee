#pragma once

// Reproducible random ensembles. The generator is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; conversions to reals and integers are
// done here rather than through <random> distributions, whose algorithms are
// implementation-defined.

#include <cstdint>
#include <random>
#include <vector>

#include "dyadic/grid.hpp"

namespace dyadic {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n-1}; n > 0. Rejection sampling, so unbiased.
  std::uint64_t below(std::uint64_t n);
  bool coin() { return (gen_() >> 63) != 0; }

  GridFunction1D uniform_function_1d(int K, double lo = -1.0, double hi = 1.0);
  GridFunction2D uniform_function_2d(int K, double lo = -1.0, double hi = 1.0);
  /// Indicator of a uniformly random set of exactly `cells` cells.
  CellSet2D random_cells(int K, std::size_t cells);
  /// Indicator of a random union of dyadic squares of side 2^-level with the
  /// given number of squares.
  CellSet2D random_dyadic_squares(int K, int level, std::size_t squares);

 private:
  std::mt19937_64 gen_;
};

/// Derives a child seed, so that sub-experiments stay independent of how many
/// numbers earlier ones consumed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace dyadic
