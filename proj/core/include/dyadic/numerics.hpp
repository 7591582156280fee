#pragma once

#include <cmath>
#include <cstdint>

namespace dyadic {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      c_ += (sum_ - t) + x;
    else
      c_ += (x - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

/// Reverses the low `bits` bits of m.
inline std::uint64_t bit_reverse(std::uint64_t m, int bits) {
  std::uint64_t r = 0;
  for (int i = 0; i < bits; ++i) r |= ((m >> i) & 1) << (bits - 1 - i);
  return r;
}

inline int parity(std::uint64_t x) { return __builtin_parityll(x); }

/// |a - b| scaled by max(1, |a|, |b|).
inline double relative_deviation(double a, double b) {
  const double scale = std::fmax(1.0, std::fmax(std::abs(a), std::abs(b)));
  return std::abs(a - b) / scale;
}

}  // namespace dyadic
