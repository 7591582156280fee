#pragma once

// Haar functions, Walsh functions, Walsh wave packets, the fast Walsh-Hadamard
// transform and one-dimensional time-frequency projections.
//
// Walsh functions are w_N(x) = e(N (*) x). With x in cell m at resolution K,
// w_N(x) = (-1)^popcount(N & bitrev_K(m)) for integer N < 2^K (Paley order).

#include <cstdint>
#include <span>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/walsh.hpp"

namespace dyadic {

struct WavePacketSpec {
  DyadicInterval I;      ///< time interval, scale <= 0
  DyadicInterval omega;  ///< frequency interval, scale >= 0
};

/// Throws unless I is a time interval of [0,1) with at least `min_cells`
/// cells at resolution K.
void check_time_interval(const DyadicInterval& I, int K, std::uint64_t min_cells = 1);

/// Cell range [first, first + count) of a time interval at resolution K.
struct CellRange {
  std::uint64_t first = 0;
  std::uint64_t count = 0;
};
CellRange cells_of(const DyadicInterval& I, int K);

/// Value of w_n on cell m of a 2^bits grid (the local coordinate of a packet).
inline int walsh_sign(std::uint64_t n, std::uint64_t m, int bits);

GridFunction1D haar(const DyadicInterval& I, int K);
GridFunction1D walsh_fn(std::uint64_t N, int K);
GridFunction1D walsh_fn(const WalshNumber& N, int K);
GridFunction1D wave_packet(const WavePacketSpec& spec, int K);

/// Unnormalized Hadamard butterfly in natural order; size must be a power of 2.
void hadamard_inplace(std::span<double> v);
/// c_n = <f, w_n> for n < 2^K, Paley order. O(K 2^K).
std::vector<double> fwht(const GridFunction1D& f);
std::vector<double> fwht(std::span<const double> values);
/// f = sum_n c_n w_n.
GridFunction1D inverse_fwht(std::span<const double> coeffs, int K);

/// Packet coefficients of a fiber over I: c_n = <f, w_{I x [n/|I|, (n+1)/|I|)}>
/// for every n < |I| 2^K.
std::vector<double> packet_coefficients(std::span<const double> f, int K, const DyadicInterval& I);
/// out += sum_n c_n w_{I x [n/|I|, (n+1)/|I|)}.
void add_packet_synthesis(std::span<const double> c, int K, const DyadicInterval& I, std::span<double> out);
/// A single inner product <f, w_{I x [n/|I|, (n+1)/|I|)}> by direct summation.
double packet_inner(std::span<const double> f, int K, const DyadicInterval& I, std::uint64_t n);
/// Adds c * w_{I x [n/|I|, (n+1)/|I|)} to out.
void add_packet(std::span<double> out, int K, const DyadicInterval& I, std::uint64_t n, double c);

/// Orthogonal projection onto packets inside the rectangle I x omega, which
/// must have area |I||omega| >= 1 (a union of tiles).
GridFunction1D project_tile_1d(const GridFunction1D& f, const DyadicInterval& I,
                               const DyadicInterval& omega);

/// Frequency cells of length 1/|I| (indices n < |I| 2^K) inside a (*) omega.
/// a (*) omega must be at least one such cell long.
CellRange region_frequency_cells(int K, const DyadicInterval& I, const WalshNumber& a,
                                 const DyadicInterval& omega);

/// Projection onto the packets of I x (a (*) omega). Cells above the grid's
/// frequency range are absent at resolution K and contribute nothing.
GridFunction1D project_region_1d(const GridFunction1D& f, const DyadicInterval& I,
                                 const WalshNumber& a, const DyadicInterval& omega);
/// Fiber version: out += projection of f.
void add_region_projection(std::span<const double> f, int K, const DyadicInterval& I,
                           const CellRange& cells, std::span<double> out);

inline int walsh_sign(std::uint64_t n, std::uint64_t m, int bits) {
  std::uint64_t r = 0;
  for (int i = 0; i < bits; ++i) r |= ((m >> i) & 1) << (bits - 1 - i);
  return __builtin_parityll(n & r) ? -1 : 1;
}

}  // namespace dyadic
