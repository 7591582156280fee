#pragma once

// Hand-rolled generators and brute-force oracles shared by the unit tests.
// The oracles deliberately avoid the library's fast paths.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/random.hpp"
#include "dyadic/tiles.hpp"
#include "dyadic/walsh.hpp"

namespace dtest {

using namespace dyadic;

/// A Walsh number with digits only at positions lo..hi.
inline WalshNumber random_walsh(Rng& rng, int lo, int hi) {
  WalshNumber x;
  for (int p = lo; p <= hi; ++p)
    if (rng.coin()) x = walsh_add(x, WalshNumber::power_of_two(p));
  return x;
}

/// Schoolbook carry-less product, one digit pair at a time.
inline WalshNumber naive_mul(const WalshNumber& a, const WalshNumber& b) {
  WalshNumber r;
  for (int i = -WalshNumber::kFracBits; i < WalshNumber::kIntBits; ++i) {
    if (!a.bit(i)) continue;
    for (int j = -WalshNumber::kFracBits; j < WalshNumber::kIntBits; ++j)
      if (b.bit(j)) r = walsh_add(r, WalshNumber::power_of_two(i + j));
  }
  return r;
}

/// Cell m at resolution K as a Walsh number.
inline WalshNumber cell_point(std::uint64_t m, int K) {
  return WalshNumber::from_raw(static_cast<u128>(m) << (WalshNumber::kFracBits - K));
}

/// w_N on cell m straight from the character: e(N (*) x_m).
inline int walsh_value(std::uint64_t N, std::uint64_t m, int K) {
  return character(walsh_mul(WalshNumber::from_integer(N), cell_point(m, K)));
}

/// Convexity from the definition: P <= P' <= P'' with P, P'' in pp forces P'
/// in pp; P' ranges over every bitile at resolution K.
inline bool brute_convex(const std::vector<Bitile>& pp, int K) {
  const std::set<Bitile> in(pp.begin(), pp.end());
  for (const Bitile& mid : all_bitiles(K)) {
    if (in.count(mid)) continue;
    for (const Bitile& lo : pp) {
      if (!le(lo, mid)) continue;
      for (const Bitile& hi : pp)
        if (le(mid, hi)) return false;
    }
  }
  return true;
}

inline std::vector<Bitile> random_subset(const std::vector<Bitile>& all, std::size_t count, Rng& rng) {
  std::vector<Bitile> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(all[rng.below(all.size())]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Finest cells (x0, x2, frequency) of a box at resolution K, as triples
/// packed into one integer. Frequencies run over [0, 2^K).
inline std::set<std::uint64_t> box_cells(const Box& b, int K) {
  std::set<std::uint64_t> out;
  const std::uint64_t len = std::uint64_t{1} << (K - b.level);
  const std::uint64_t wlen = std::uint64_t{1} << b.omega.scale;
  for (std::uint64_t x0 = b.i0 * len; x0 < (b.i0 + 1) * len; ++x0)
    for (std::uint64_t x2 = b.i2 * len; x2 < (b.i2 + 1) * len; ++x2)
      for (std::uint64_t w = b.omega.index * wlen; w < (b.omega.index + 1) * wlen && w < (std::uint64_t{1} << K); ++w)
        out.insert((x0 << (2 * K)) | (x2 << K) | w);
  return out;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

inline GridFunction2D indicator_of(const CellSet2D& e) { return e.indicator(); }

}  // namespace dtest
