#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dyadic/error.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/walsh.hpp"
#include "dyadic/wavelets.hpp"
#include "support.hpp"

using namespace dyadic;

namespace {

WalshNumber w(double x) { return WalshNumber::from_double(x); }

}  // namespace

TEST(WalshAdd, Examples) {
  EXPECT_EQ(walsh_add(w(0.5), w(0.25)), w(0.75));
  EXPECT_EQ(walsh_add(w(0.75), w(0.25)), w(0.5));
  EXPECT_TRUE(walsh_add(w(3.625), w(3.625)).is_zero());
}

TEST(WalshMul, Examples) {
  EXPECT_EQ(walsh_mul(w(0.5), w(0.5)), w(0.25));
  EXPECT_EQ(walsh_mul(w(2), w(0.5)), w(1));
  EXPECT_EQ(walsh_mul(w(0.75), w(0.75)), w(0.3125));
}

TEST(WalshMul, MatchesDigitLoop) {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const WalshNumber a = dtest::random_walsh(rng, -12, 5), b = dtest::random_walsh(rng, -12, 5);
    EXPECT_EQ(walsh_mul(a, b), dtest::naive_mul(a, b));
  }
}

TEST(WalshMul, OverflowThrows) {
  EXPECT_THROW(walsh_mul(WalshNumber::power_of_two(10), WalshNumber::power_of_two(10)), DyadicError);
  EXPECT_THROW(walsh_mul(WalshNumber::power_of_two(-40), WalshNumber::power_of_two(-40)), DyadicError);
}

TEST(WalshLaws, GroupAndRing) {
  Rng rng(12);
  for (int t = 0; t < 500; ++t) {
    const WalshNumber a = dtest::random_walsh(rng, -12, 3), b = dtest::random_walsh(rng, -12, 3),
                      c = dtest::random_walsh(rng, -12, 3);
    EXPECT_EQ((a ^ b) ^ c, a ^ (b ^ c));
    EXPECT_EQ(a ^ WalshNumber{}, a);
    EXPECT_TRUE((a ^ a).is_zero());
    EXPECT_EQ(a ^ b, b ^ a);
    EXPECT_EQ(walsh_mul(a, b), walsh_mul(b, a));
    EXPECT_EQ(walsh_mul(walsh_mul(a, b), c), walsh_mul(a, walsh_mul(b, c)));
    EXPECT_EQ(walsh_mul(a, b) ^ walsh_mul(a, c), walsh_mul(a, b ^ c));
    EXPECT_EQ(walsh_mul(a, WalshNumber::from_integer(1)), a);
  }
}

TEST(Character, Examples) {
  EXPECT_EQ(character(w(0)), 1);
  EXPECT_EQ(character(w(0.5)), -1);
  EXPECT_EQ(character(w(0.25)), 1);
  EXPECT_EQ(character(w(1.5)), -1);
}

TEST(Character, Multiplicative) {
  const int K = 6;
  for (std::uint64_t x = 0; x < 64; ++x)
    for (std::uint64_t y = 0; y < 64; ++y) {
      const WalshNumber a = dtest::cell_point(x, K), b = dtest::cell_point(y, K);
      EXPECT_EQ(character(a ^ b), character(a) * character(b));
    }
}

TEST(WalshNumber, CanonicalBits) {
  EXPECT_EQ(w(0).bits(), "0");
  EXPECT_EQ(w(2.75).bits(), "10.11");
  EXPECT_EQ(WalshNumber::from_binary("0010.1100"), w(2.75));
  EXPECT_EQ(w(2.75).hi(), 1);
  EXPECT_EQ(w(2.75).lo(), -2);
  EXPECT_THROW(w(0).hi(), DyadicError);
  EXPECT_THROW(WalshNumber::from_double(-1), DyadicError);
  EXPECT_THROW(WalshNumber::from_double(1e-30), DyadicError);
}

TEST(CosetMembership, Examples) {
  EXPECT_TRUE(coset_membership(w(1), w(1), {0, 1}));
  EXPECT_FALSE(coset_membership(w(0.5), w(1), {0, 1}));
  EXPECT_TRUE(coset_membership(w(2), w(2), {0, 1}));
  EXPECT_THROW(coset_membership(w(1), w(0), {0, 1}), DyadicError);
}

// a (*) omega at granularity g by enumerating the members of omega on the
// grid fine enough for every digit above 2^g of the product.
TEST(CosetMembership, MatchesEnumeration) {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    WalshNumber a;
    while (a.is_zero()) a = dtest::random_walsh(rng, -2, 2);
    const int s = static_cast<int>(rng.below(3));
    const DyadicInterval omega{s, rng.below(4)};
    const int g = -static_cast<int>(rng.below(3));
    const int step = g - a.hi();
    std::set<std::string> image;
    const std::uint64_t count = std::uint64_t{1} << std::max(0, s - step);
    for (std::uint64_t k = 0; k < count; ++k) {
      const WalshNumber eta = omega.left() ^ walsh_mul(WalshNumber::from_integer(k), WalshNumber::power_of_two(step));
      image.insert(walsh_mul(a, eta).truncate_below(g).bits());
      EXPECT_TRUE(walsh_image(a, omega).contains(walsh_mul(a, eta)));
    }
    for (int q = 0; q < 20; ++q) {
      const WalshNumber xi = dtest::random_walsh(rng, g, 6);
      EXPECT_EQ(coset_membership(xi, a, omega, g), image.count(xi.bits()) == 1)
          << "a=" << a.bits() << " omega=" << omega.scale << "," << omega.index << " xi=" << xi.bits();
    }
    for (const std::string& member : image) EXPECT_TRUE(coset_membership(WalshNumber::from_binary(member), a, omega, g));
  }
}

TEST(DyadicInterval, Containment) {
  const DyadicInterval half{-1, 1};
  EXPECT_TRUE(half.contains(w(0.75)));
  EXPECT_FALSE(half.contains(w(0.25)));
  EXPECT_TRUE(half.contains(DyadicInterval{-2, 3}));
  EXPECT_FALSE(half.contains(DyadicInterval{0, 0}));
  EXPECT_TRUE(half.is_time());
  EXPECT_FALSE((DyadicInterval{-1, 2}).is_time());
}

TEST(GridFunction, NormsAndIntegrals) {
  const int K = 4;
  const GridFunction1D one(K, 1.0);
  for (double p : {1.0, 1.5, 2.0, 7.0, static_cast<double>(INFINITY)}) EXPECT_NEAR(norm_p(one, p), 1.0, 1e-15);
  const GridFunction1D h = haar({0, 0}, K);
  EXPECT_EQ(integral(h), 0.0);
  EXPECT_NEAR(norm_p(h, 2), 1.0, 1e-15);

  Rng rng(14);
  const GridFunction2D f = rng.uniform_function_2d(3);
  double direct = 0;
  for (double v : f.values()) direct += std::pow(std::abs(v), 3.0);
  EXPECT_NEAR(norm_p(f, 3.0), std::cbrt(direct / 64.0), 1e-14);
}

TEST(GridFunction, ResolutionMismatchThrows) {
  EXPECT_THROW(GridFunction1D(3) + GridFunction1D(4), DyadicError);
  EXPECT_THROW(inner(GridFunction2D(2), GridFunction2D(3)), DyadicError);
  EXPECT_THROW(GridFunction1D(2, std::vector<double>{1, 2, 3}), DyadicError);
  EXPECT_THROW(GridFunction1D(1, std::vector<double>{1, NAN}), DyadicError);
}
