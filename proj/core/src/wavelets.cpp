#include "dyadic/wavelets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dyadic/error.hpp"
#include "dyadic/numerics.hpp"

namespace dyadic {

namespace {

// Fills v with f restricted to the cells of I, in bit-reversed order of the
// local coordinate, so that a natural-order Hadamard gives Paley coefficients.
std::vector<double> gather_reversed(std::span<const double> f, const CellRange& r, int bits) {
  std::vector<double> v(r.count);
  for (std::uint64_t u = 0; u < r.count; ++u) v[bit_reverse(u, bits)] = f[r.first + u];
  return v;
}

int level_of(const DyadicInterval& I) { return -I.scale; }

}  // namespace

void check_time_interval(const DyadicInterval& I, int K, std::uint64_t min_cells) {
  if (!I.is_time()) throw DyadicError("not a time interval of [0,1)");
  if (level_of(I) > K || (std::uint64_t{1} << (K - level_of(I))) < min_cells)
    throw DyadicError("interval below resolution");
}

CellRange cells_of(const DyadicInterval& I, int K) {
  check_time_interval(I, K);
  const int w = K - level_of(I);
  return {I.index << w, std::uint64_t{1} << w};
}

GridFunction1D haar(const DyadicInterval& I, int K) {
  check_time_interval(I, K, 2);
  const CellRange r = cells_of(I, K);
  GridFunction1D h(K);
  for (std::uint64_t u = 0; u < r.count; ++u) h[r.first + u] = u < r.count / 2 ? 1.0 : -1.0;
  return h;
}

GridFunction1D walsh_fn(std::uint64_t N, int K) {
  if (K < 64 && (N >> K) != 0) throw DyadicError("frequency beyond resolution");
  GridFunction1D w(K);
  for (std::uint64_t m = 0; m < w.size(); ++m) w[m] = walsh_sign(N, m, K);
  return w;
}

GridFunction1D walsh_fn(const WalshNumber& N, int K) {
  if (N.truncate_below(0) != N) throw DyadicError("frequency must be a nonnegative integer");
  return walsh_fn(N.integer_part(), K);
}

GridFunction1D wave_packet(const WavePacketSpec& spec, int K) {
  const DyadicInterval& I = spec.I;
  const DyadicInterval& w = spec.omega;
  if (!w.is_frequency()) throw DyadicError("frequency interval must have integer endpoints");
  if (I.scale + w.scale != 0) throw DyadicError("wave packet needs area |I||omega| = 1");
  check_time_interval(I, K);
  const int bits = K - level_of(I);
  if (bits < 64 && (w.index >> bits) != 0) throw DyadicError("frequency beyond resolution");
  GridFunction1D out(K);
  add_packet(out.values(), K, I, w.index, 1.0);
  return out;
}

void hadamard_inplace(std::span<double> v) {
  const std::size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DyadicError("length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t k = i; k < i + h; ++k) {
        const double a = v[k], b = v[k + h];
        v[k] = a + b;
        v[k + h] = a - b;
      }
}

std::vector<double> fwht(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DyadicError("length must be a power of two");
  const int K = std::countr_zero(n);
  std::vector<double> v = gather_reversed(values, {0, n}, K);
  hadamard_inplace(v);
  const double scale = std::ldexp(1.0, -K);
  for (double& x : v) x *= scale;
  return v;
}

std::vector<double> fwht(const GridFunction1D& f) { return fwht(f.values()); }

GridFunction1D inverse_fwht(std::span<const double> coeffs, int K) {
  if (coeffs.size() != (std::size_t{1} << K)) throw DyadicError("coefficient count must be 2^K");
  std::vector<double> v(coeffs.begin(), coeffs.end());
  hadamard_inplace(v);
  GridFunction1D f(K);
  for (std::uint64_t m = 0; m < f.size(); ++m) f[m] = v[bit_reverse(m, K)];
  return f;
}

std::vector<double> packet_coefficients(std::span<const double> f, int K, const DyadicInterval& I) {
  const CellRange r = cells_of(I, K);
  const int bits = K - level_of(I);
  std::vector<double> v = gather_reversed(f, r, bits);
  hadamard_inplace(v);
  // <f, w> = 2^-K |I|^-1/2 sum f * sign, |I|^-1/2 = 2^(level/2).
  const double scale = std::ldexp(std::sqrt(std::ldexp(1.0, level_of(I))), -K);
  for (double& x : v) x *= scale;
  return v;
}

void add_packet_synthesis(std::span<const double> c, int K, const DyadicInterval& I, std::span<double> out) {
  const CellRange r = cells_of(I, K);
  if (c.size() != r.count) throw DyadicError("packet coefficient count mismatch");
  const int bits = K - level_of(I);
  std::vector<double> v(c.begin(), c.end());
  hadamard_inplace(v);
  const double amp = std::sqrt(std::ldexp(1.0, level_of(I)));
  for (std::uint64_t u = 0; u < r.count; ++u) out[r.first + u] += amp * v[bit_reverse(u, bits)];
}

double packet_inner(std::span<const double> f, int K, const DyadicInterval& I, std::uint64_t n) {
  const CellRange r = cells_of(I, K);
  const int bits = K - level_of(I);
  double s = 0;
  for (std::uint64_t u = 0; u < r.count; ++u)
    s += parity(n & bit_reverse(u, bits)) ? -f[r.first + u] : f[r.first + u];
  return std::ldexp(std::sqrt(std::ldexp(1.0, level_of(I))) * s, -K);
}

void add_packet(std::span<double> out, int K, const DyadicInterval& I, std::uint64_t n, double c) {
  const CellRange r = cells_of(I, K);
  const int bits = K - level_of(I);
  const double amp = c * std::sqrt(std::ldexp(1.0, level_of(I)));
  for (std::uint64_t u = 0; u < r.count; ++u)
    out[r.first + u] += parity(n & bit_reverse(u, bits)) ? -amp : amp;
}

namespace {

CellRange tile_cells(int K, const DyadicInterval& I, const DyadicInterval& omega) {
  if (!omega.is_frequency()) throw DyadicError("frequency interval must have integer endpoints");
  check_time_interval(I, K);
  const int j = level_of(I);
  if (omega.scale < j) throw DyadicError("time-frequency rectangle has area below 1");
  const std::uint64_t available = std::uint64_t{1} << (K - j);
  const int rel = omega.scale - j;
  if (rel >= 64) return {0, available};
  const u128 first = static_cast<u128>(omega.index) << rel;
  if (first >= available) return {0, 0};
  const u128 last = std::min<u128>(first + (u128{1} << rel), available);
  return {static_cast<std::uint64_t>(first), static_cast<std::uint64_t>(last - first)};
}

}  // namespace

void add_region_projection(std::span<const double> f, int K, const DyadicInterval& I,
                           const CellRange& cells, std::span<double> out) {
  if (cells.count == 0) return;
  std::vector<double> c = packet_coefficients(f, K, I);
  for (std::uint64_t n = 0; n < c.size(); ++n)
    if (n < cells.first || n >= cells.first + cells.count) c[n] = 0.0;
  add_packet_synthesis(c, K, I, out);
}

GridFunction1D project_tile_1d(const GridFunction1D& f, const DyadicInterval& I, const DyadicInterval& omega) {
  const CellRange cells = tile_cells(f.resolution(), I, omega);
  GridFunction1D out(f.resolution());
  add_region_projection(f.values(), f.resolution(), I, cells, out.values());
  return out;
}

CellRange region_frequency_cells(int K, const DyadicInterval& I, const WalshNumber& a,
                                 const DyadicInterval& omega) {
  if (a.is_zero()) throw DyadicError("degenerate multiplier");
  if (!omega.is_frequency()) throw DyadicError("frequency interval must have integer endpoints");
  const DyadicInterval image = walsh_image(a, omega);
  return tile_cells(K, I, image);
}

GridFunction1D project_region_1d(const GridFunction1D& f, const DyadicInterval& I, const WalshNumber& a,
                                 const DyadicInterval& omega) {
  const CellRange cells = region_frequency_cells(f.resolution(), I, a, omega);
  GridFunction1D out(f.resolution());
  add_region_projection(f.values(), f.resolution(), I, cells, out.values());
  return out;
}

}  // namespace dyadic
