#include "dyadic/walsh.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <vector>

#include "dyadic/error.hpp"

namespace dyadic {

namespace {

constexpr int kTotalBits = WalshNumber::kFracBits + WalshNumber::kIntBits;
constexpr u128 kOne = u128{1};
constexpr u128 kWindowMask = (kOne << kTotalBits) - 1;

int top_bit(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  if (hi != 0) return 127 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<std::uint64_t>(v));
}

int bottom_bit(u128 v) {
  const auto lo = static_cast<std::uint64_t>(v);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<std::uint64_t>(v >> 64));
}

// 80x80 -> 160 bit carry-less product in four 64-bit limbs.
std::array<std::uint64_t, 4> clmul_wide(u128 a, u128 b) {
  std::array<std::uint64_t, 4> acc{};
  while (b != 0) {
    const int i = bottom_bit(b);
    b &= b - 1;
    // a << i, spread across limbs.
    const int limb = i / 64;
    const int shift = i % 64;
    const std::uint64_t parts[2] = {static_cast<std::uint64_t>(a),
                                    static_cast<std::uint64_t>(a >> 64)};
    for (int k = 0; k < 2; ++k) {
      if (limb + k < 4) acc[limb + k] ^= parts[k] << shift;
      if (shift != 0 && limb + k + 1 < 4) acc[limb + k + 1] ^= parts[k] >> (64 - shift);
    }
  }
  return acc;
}

// raw * 2^t; digits shifted below 2^-64 are dropped, overflow above throws.
u128 shifted(u128 raw, int t) {
  if (t <= 0) return t <= -128 ? 0 : raw >> -t;
  if (t >= kTotalBits || (raw >> (kTotalBits - t)) != 0)
    throw DyadicError("walsh number overflow: integer part too large");
  return raw << t;
}

}  // namespace

u128 clmul(std::uint64_t a, std::uint64_t b) {
  u128 acc = 0;
  while (b != 0) {
    const int i = std::countr_zero(b);
    b &= b - 1;
    acc ^= static_cast<u128>(a) << i;
  }
  return acc;
}

WalshNumber WalshNumber::from_raw(u128 raw) {
  if ((raw & ~kWindowMask) != 0) throw DyadicError("walsh number overflow: integer part too large");
  return WalshNumber(raw);
}

WalshNumber WalshNumber::from_integer(std::uint64_t n) {
  if (n >> kIntBits) throw DyadicError("walsh number overflow: integer part too large");
  return WalshNumber(static_cast<u128>(n) << kFracBits);
}

WalshNumber WalshNumber::power_of_two(int p) {
  if (p < -kFracBits || p >= kIntBits) throw DyadicError("walsh number overflow: 2^p out of range");
  return WalshNumber(kOne << (p + kFracBits));
}

WalshNumber WalshNumber::from_double(double x) {
  if (!std::isfinite(x) || x < 0) throw DyadicError("walsh number must be finite and nonnegative");
  if (x == 0) return {};
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, mant in [0.5, 1)
  // 53-bit integer mantissa m with x = m * 2^(exp - 53).
  const auto m = static_cast<std::uint64_t>(std::ldexp(mant, 53));
  const int shift = exp - 53 + kFracBits;
  u128 raw = 0;
  if (shift >= 0) {
    if (shift + 53 > kTotalBits) throw DyadicError("walsh number overflow: integer part too large");
    raw = static_cast<u128>(m) << shift;
  } else {
    if (-shift >= 64 || (m & ((std::uint64_t{1} << -shift) - 1)) != 0)
      throw DyadicError("walsh number overflow: precision below 2^-64");
    raw = static_cast<u128>(m >> -shift);
  }
  return from_raw(raw);
}

WalshNumber WalshNumber::from_binary(std::string_view digits) {
  if (digits.empty()) throw DyadicError("empty binary expansion");
  const auto dot = digits.find('.');
  const std::string_view ip = digits.substr(0, dot);
  const std::string_view fp = dot == std::string_view::npos ? std::string_view{} : digits.substr(dot + 1);
  if (ip.empty() && fp.empty()) throw DyadicError("empty binary expansion");
  u128 raw = 0;
  int pos = static_cast<int>(ip.size()) - 1;
  for (char c : ip) {
    if (c != '0' && c != '1') throw DyadicError("invalid binary digit in '" + std::string(digits) + "'");
    if (c == '1') {
      if (pos >= kIntBits) throw DyadicError("walsh number overflow: integer part too large");
      raw |= kOne << (pos + kFracBits);
    }
    --pos;
  }
  pos = -1;
  for (char c : fp) {
    if (c != '0' && c != '1') throw DyadicError("invalid binary digit in '" + std::string(digits) + "'");
    if (c == '1') {
      if (pos < -kFracBits) throw DyadicError("walsh number overflow: precision below 2^-64");
      raw |= kOne << (pos + kFracBits);
    }
    --pos;
  }
  return WalshNumber(raw);
}

int WalshNumber::hi() const {
  if (raw_ == 0) throw DyadicError("leading digit of zero is undefined");
  return top_bit(raw_) - kFracBits;
}

int WalshNumber::lo() const {
  if (raw_ == 0) throw DyadicError("trailing digit of zero is undefined");
  return bottom_bit(raw_) - kFracBits;
}

bool WalshNumber::bit(int position) const {
  const int b = position + kFracBits;
  if (b < 0 || b >= kTotalBits) return false;
  return ((raw_ >> b) & 1) != 0;
}

std::string WalshNumber::bits() const {
  if (raw_ == 0) return "0";
  const int h = std::max(hi(), 0);
  const int l = std::min(lo(), 0);
  std::string out;
  for (int p = h; p >= 0; --p) out.push_back(bit(p) ? '1' : '0');
  if (l < 0) {
    out.push_back('.');
    for (int p = -1; p >= l; --p) out.push_back(bit(p) ? '1' : '0');
  }
  return out;
}

double WalshNumber::to_double() const {
  const auto hi_part = static_cast<std::uint64_t>(raw_ >> 64);
  const auto lo_part = static_cast<std::uint64_t>(raw_);
  return static_cast<double>(hi_part) + std::ldexp(static_cast<double>(lo_part), -64);
}

std::uint64_t WalshNumber::integer_part() const { return static_cast<std::uint64_t>(raw_ >> kFracBits); }

WalshNumber WalshNumber::truncate_below(int position) const {
  const int b = position + kFracBits;
  if (b <= 0) return *this;
  if (b >= kTotalBits) return {};
  return WalshNumber(raw_ & ~((kOne << b) - 1));
}

WalshNumber walsh_add(const WalshNumber& a, const WalshNumber& b) {
  return WalshNumber::from_raw(a.raw() ^ b.raw());
}

WalshNumber walsh_mul(const WalshNumber& a, const WalshNumber& b) {
  // raw_a * raw_b carries 2^-128; the result must be a multiple of 2^-64.
  const auto p = clmul_wide(a.raw(), b.raw());
  if (p[0] != 0) throw DyadicError("walsh number overflow: precision below 2^-64");
  const u128 raw = (static_cast<u128>(p[2]) << 64) | p[1];
  if (p[3] != 0 || (raw & ~kWindowMask) != 0)
    throw DyadicError("walsh number overflow: integer part too large");
  return WalshNumber::from_raw(raw);
}

int character(const WalshNumber& x) { return x.bit(-1) ? -1 : 1; }

WalshNumber DyadicInterval::left() const {
  if (scale < -WalshNumber::kFracBits || scale >= WalshNumber::kIntBits)
    throw DyadicError("dyadic interval scale out of range");
  const int shift = scale + WalshNumber::kFracBits;
  const u128 idx = static_cast<u128>(index);
  if (shift > 0 && (idx >> (kTotalBits - shift)) != 0)
    throw DyadicError("dyadic interval endpoint out of range");
  return WalshNumber::from_raw(idx << shift);
}

bool DyadicInterval::contains(const WalshNumber& x) const {
  const int shift = scale + WalshNumber::kFracBits;
  return (x.raw() >> shift) == static_cast<u128>(index);
}

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.scale > scale) return false;
  return (other.index >> (scale - other.scale)) == index;
}

bool DyadicInterval::is_time() const {
  if (scale > 0) return false;
  return scale == 0 ? index == 0 : (index >> -scale) == 0;
}

DyadicInterval walsh_image(const WalshNumber& a, const DyadicInterval& omega) {
  if (a.is_zero()) throw DyadicError("degenerate multiplier");
  const int s = omega.scale + a.hi();
  const WalshNumber base = walsh_mul(a, omega.left()).truncate_below(s);
  const int shift = s + WalshNumber::kFracBits;
  if (shift < 0) throw DyadicError("walsh number overflow: precision below 2^-64");
  const u128 idx = base.raw() >> shift;
  return DyadicInterval{s, static_cast<std::uint64_t>(idx)};
}

bool coset_membership(const WalshNumber& xi, const WalshNumber& a, const DyadicInterval& omega,
                      int granularity) {
  if (a.is_zero()) throw DyadicError("degenerate multiplier");
  const int g = std::max(granularity, -WalshNumber::kFracBits);
  // Generators a (*) 2^t for 2^t < |omega|, truncated below 2^g. Generators
  // with t < g - hi(a) vanish after truncation.
  std::vector<u128> basis;  // reduced echelon rows, distinct leading bits
  for (int t = g - a.hi(); t < omega.scale; ++t) {
    u128 v = shifted(a.raw(), t) & ~((u128{1} << (g + WalshNumber::kFracBits)) - 1);
    for (const u128 row : basis)
      if ((v >> top_bit(row)) & 1) v ^= row;
    if (v == 0) continue;
    for (u128& row : basis)
      if ((row >> top_bit(v)) & 1) row ^= v;
    basis.push_back(v);
  }
  u128 target = (xi ^ walsh_mul(a, omega.left())).truncate_below(g).raw();
  for (const u128 row : basis)
    if ((target >> top_bit(row)) & 1) target ^= row;
  return target == 0;
}

bool coset_membership(const WalshNumber& xi, const WalshNumber& a, const DyadicInterval& omega) {
  if (a.is_zero()) throw DyadicError("degenerate multiplier");
  int g = std::min(0, omega.scale + a.hi());
  if (!xi.is_zero()) g = std::min(g, xi.lo());
  return coset_membership(xi, a, omega, g);
}

}  // namespace dyadic
