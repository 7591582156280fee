#pragma once

// Exact arithmetic in the Walsh field at finite bit resolution.
//
// A Walsh number is a finite binary expansion sum_k a_k 2^k; addition is XOR
// of the digit strings and multiplication is carry-less (GF(2) polynomial)
// multiplication. Numbers are stored in fixed point with 64 fractional and 16
// integer bits; any operation whose exact result leaves that window throws.

#include <cstdint>
#include <string>
#include <string_view>

namespace dyadic {

__extension__ using u128 = unsigned __int128;

class WalshNumber {
 public:
  static constexpr int kFracBits = 64;
  static constexpr int kIntBits = 16;

  constexpr WalshNumber() = default;

  static WalshNumber from_integer(std::uint64_t n);
  /// Exact conversion; throws if `x` is negative, not finite, or needs bits
  /// outside the representable window.
  static WalshNumber from_double(double x);
  /// Parses a binary expansion such as "10.11" (= 2.75).
  static WalshNumber from_binary(std::string_view digits);
  static WalshNumber from_raw(u128 raw);
  /// The number 2^p.
  static WalshNumber power_of_two(int p);

  u128 raw() const { return raw_; }
  bool is_zero() const { return raw_ == 0; }

  /// Position of the leading nonzero digit (2^hi). Throws on zero.
  int hi() const;
  /// Position of the trailing nonzero digit (2^lo). Throws on zero.
  int lo() const;
  /// Coefficient a_p of 2^p.
  bool bit(int position) const;

  /// Canonical binary string: leading and trailing zeros trimmed, "0" for zero.
  std::string bits() const;
  double to_double() const;
  /// Digits at nonnegative positions, as an ordinary integer.
  std::uint64_t integer_part() const;
  /// Clears every digit at a position below `position`.
  WalshNumber truncate_below(int position) const;

  friend bool operator==(const WalshNumber&, const WalshNumber&) = default;

 private:
  explicit constexpr WalshNumber(u128 raw) : raw_(raw) {}
  u128 raw_ = 0;
};

WalshNumber walsh_add(const WalshNumber& a, const WalshNumber& b);
WalshNumber walsh_mul(const WalshNumber& a, const WalshNumber& b);

inline WalshNumber operator^(const WalshNumber& a, const WalshNumber& b) {
  return walsh_add(a, b);
}

/// The standard character e: +1 if the 2^-1 digit is 0, -1 otherwise
/// (the 1-periodic extension of the Haar function of [0,1)).
int character(const WalshNumber& x);

/// Carry-less product of two machine integers.
u128 clmul(std::uint64_t a, std::uint64_t b);

/// Dyadic interval [index * 2^scale, (index + 1) * 2^scale).
///
/// Time intervals have scale <= 0 and lie in [0,1); frequency intervals have
/// scale >= 0 (integer endpoints).
struct DyadicInterval {
  int scale = 0;
  std::uint64_t index = 0;

  WalshNumber left() const;
  bool contains(const WalshNumber& x) const;
  bool contains(const DyadicInterval& other) const;
  bool is_time() const;
  bool is_frequency() const { return scale >= 0; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

/// Decides xi in a (*) omega by Gaussian elimination over GF(2).
///
/// a (*) omega is the coset a (*) l(omega) + span{a (*) 2^t : 2^t < |omega|}.
/// Digits of xi below 2^granularity are ignored; the generators run down to
/// t = granularity - hi(a) so that their truncations are triangular and span
/// the whole coset at that granularity. Throws "degenerate multiplier" if a = 0.
bool coset_membership(const WalshNumber& xi, const WalshNumber& a,
                      const DyadicInterval& omega, int granularity);

/// Overload with exact granularity: the finest one needed to decide
/// membership of xi itself.
bool coset_membership(const WalshNumber& xi, const WalshNumber& a,
                      const DyadicInterval& omega);

/// The dyadic interval a (*) omega (multiplication by a nonzero Walsh number
/// maps A_s onto A_{s + hi(a)}, so the image of a dyadic interval is dyadic).
DyadicInterval walsh_image(const WalshNumber& a, const DyadicInterval& omega);

}  // namespace dyadic
