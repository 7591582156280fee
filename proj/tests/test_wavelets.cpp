#include <gtest/gtest.h>

#include <cmath>

#include "dyadic/error.hpp"
#include "dyadic/wavelets.hpp"
#include "support.hpp"

using namespace dyadic;

TEST(Haar, Values) {
  const GridFunction1D h = haar({0, 0}, 2);
  EXPECT_EQ(h.values(), (std::vector<double>{1, 1, -1, -1}));
  EXPECT_EQ(norm_p(haar({-2, 3}, 5), INFINITY), 1.0);
  EXPECT_THROW(haar({-3, 0}, 3), DyadicError);
}

TEST(Haar, Orthogonality) {
  const int K = 5;
  std::vector<DyadicInterval> all;
  for (int s = 0; s > -K; --s)
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << -s); ++i) all.push_back({s, i});
  for (const auto& I : all)
    for (const auto& J : all) {
      const double ip = inner(haar(I, K), haar(J, K));
      if (I == J)
        EXPECT_NEAR(ip, std::ldexp(1.0, I.scale), 1e-15);
      else
        EXPECT_EQ(ip, 0.0);
    }
}

TEST(WalshFn, MatchesCharacter) {
  for (int K = 1; K <= 6; ++K)
    for (std::uint64_t N = 0; N < (std::uint64_t{1} << K); ++N) {
      const GridFunction1D f = walsh_fn(N, K);
      for (std::uint64_t m = 0; m < f.size(); ++m) ASSERT_EQ(f[m], dtest::walsh_value(N, m, K)) << K << " " << N;
    }
  EXPECT_EQ(walsh_fn(0, 3).values(), std::vector<double>(8, 1.0));
  EXPECT_EQ(walsh_fn(1, 4).values(), haar({0, 0}, 4).values());
  EXPECT_THROW(walsh_fn(8, 3), DyadicError);
}

TEST(WalshFn, GramIdentity) {
  for (int K = 1; K <= 8; ++K) {
    const std::size_t n = std::size_t{1} << K;
    std::vector<GridFunction1D> w;
    for (std::uint64_t N = 0; N < n; ++N) w.push_back(walsh_fn(N, K));
    double dev = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) dev = std::max(dev, std::abs(inner(w[a], w[b]) - (a == b ? 1.0 : 0.0)));
    EXPECT_LE(dev, 1e-12) << "K=" << K;
  }
}

TEST(Fwht, PointMassIsFlat) {
  const int K = 6;
  GridFunction1D f(K);
  f[0] = 1;
  for (double c : fwht(f)) EXPECT_EQ(c, std::ldexp(1.0, -K));
}

TEST(Fwht, MatchesInnerProductsAndParseval) {
  Rng rng(21);
  for (int K = 0; K <= 8; ++K) {
    const GridFunction1D f = rng.uniform_function_1d(K);
    const std::vector<double> c = fwht(f);
    double energy = 0;
    for (std::size_t N = 0; N < c.size(); ++N) {
      EXPECT_NEAR(c[N], inner(f, walsh_fn(N, K)), 1e-13);
      energy += c[N] * c[N];
    }
    double direct = 0;
    for (double v : f.values()) direct += v * v;
    EXPECT_NEAR(energy * std::ldexp(1.0, K), direct, 1e-10);
    EXPECT_LE(max_abs_diff(inverse_fwht(c, K), f), 1e-13);
  }
}

TEST(Fwht, InvolutionUpToScale) {
  Rng rng(22);
  const GridFunction1D f = rng.uniform_function_1d(7);
  const std::vector<double> once = fwht(f);
  const std::vector<double> twice = fwht(std::span<const double>(once));
  for (std::size_t m = 0; m < f.size(); ++m) EXPECT_NEAR(twice[m] * 128.0, f[m], 1e-13);
}

TEST(WavePacket, ZeroFrequencyAndArea) {
  EXPECT_EQ(wave_packet({{0, 0}, {0, 0}}, 4).values(), std::vector<double>(16, 1.0));
  EXPECT_THROW(wave_packet({{-1, 0}, {0, 0}}, 4), DyadicError);
}

TEST(WavePacket, Recursions) {
  for (int K = 1; K <= 7; ++K)
    for (int j = 0; j < K; ++j)
      for (std::uint64_t i = 0; i < (std::uint64_t{1} << j); ++i)
        for (std::uint64_t f = 0; (f + 1) << (j + 1) <= (std::uint64_t{1} << K); ++f) {
          const DyadicInterval I{-j, i}, omega{j + 1, f};
          const GridFunction1D left = wave_packet({{-j - 1, 2 * i}, omega}, K);
          const GridFunction1D right = wave_packet({{-j - 1, 2 * i + 1}, omega}, K);
          const GridFunction1D down = wave_packet({I, {j, 2 * f}}, K);
          const GridFunction1D up = wave_packet({I, {j, 2 * f + 1}}, K);
          ASSERT_LE(max_abs_diff(up, (1 / std::sqrt(2.0)) * (left - right)), 1e-12);
          ASSERT_LE(max_abs_diff(down, (1 / std::sqrt(2.0)) * (left + right)), 1e-12);
        }
}

TEST(ProjectTile1d, Basics) {
  Rng rng(23);
  const int K = 5;
  const GridFunction1D f = rng.uniform_function_1d(K);
  EXPECT_LE(max_abs_diff(project_tile_1d(f, {0, 0}, {0, 0}), GridFunction1D(K, integral(f))), 1e-14);

  const WavePacketSpec p{{-2, 1}, {2, 3}};
  const GridFunction1D wp = wave_packet(p, K);
  EXPECT_LE(max_abs_diff(project_tile_1d(wp, p.I, p.omega), wp), 1e-13);
  EXPECT_LE(norm_p(project_tile_1d(wp, {-2, 1}, {2, 2}), 2), 1e-13);
  EXPECT_LE(norm_p(project_tile_1d(wp, {-1, 1}, {1, 1}), 2), 1e-13);
}

TEST(ProjectTile1d, IdempotentOrthogonalAdditive) {
  Rng rng(24);
  const int K = 6;
  for (int t = 0; t < 50; ++t) {
    const GridFunction1D f = rng.uniform_function_1d(K);
    const int s = static_cast<int>(rng.below(K));  // |I| = 2^-s
    const int area = static_cast<int>(rng.below(K - s + 1));
    const DyadicInterval I{-s, rng.below(std::uint64_t{1} << s)};
    const std::uint64_t nw = std::uint64_t{1} << (K - s - area);
    const DyadicInterval omega{s + area, rng.below(nw)};
    const GridFunction1D p = project_tile_1d(f, I, omega);
    EXPECT_LE(max_abs_diff(project_tile_1d(p, I, omega), p), 1e-12);
    EXPECT_NEAR(inner(f - p, p), 0.0, 1e-12);
    if (area > 0) {
      // The rectangle is the union of its two frequency halves.
      const GridFunction1D lo = project_tile_1d(f, I, {omega.scale - 1, 2 * omega.index});
      const GridFunction1D hi = project_tile_1d(f, I, {omega.scale - 1, 2 * omega.index + 1});
      EXPECT_NEAR(inner(lo, hi), 0.0, 1e-12);
      EXPECT_LE(max_abs_diff(lo + hi, p), 1e-12);
      // ... and of its two time halves.
      const GridFunction1D l = project_tile_1d(f, {I.scale - 1, 2 * I.index}, omega);
      const GridFunction1D r = project_tile_1d(f, {I.scale - 1, 2 * I.index + 1}, omega);
      EXPECT_LE(max_abs_diff(l + r, p), 1e-12);
    }
  }
}

TEST(ProjectRegion1d, UnitMultiplierIsTileProjection) {
  Rng rng(25);
  const int K = 5;
  for (int t = 0; t < 30; ++t) {
    const GridFunction1D f = rng.uniform_function_1d(K);
    const int s = static_cast<int>(rng.below(K));
    const DyadicInterval I{-s, rng.below(std::uint64_t{1} << s)};
    const DyadicInterval omega{s, rng.below(std::uint64_t{1} << (K - s))};
    EXPECT_LE(max_abs_diff(project_region_1d(f, I, WalshNumber::from_integer(1), omega), project_tile_1d(f, I, omega)),
              1e-13);
  }
  EXPECT_THROW(project_region_1d(GridFunction1D(3), {0, 0}, WalshNumber{}, {0, 0}), DyadicError);
}

// Projection onto I x (a (*) omega) against the sum of packets whose frequency
// cell is found by enumerating a (*) omega.
TEST(ProjectRegion1d, MatchesEnumeratedCoset) {
  Rng rng(26);
  const int K = 6;
  for (const char* digits : {"10", "11", "1.1", "10.11", "1"}) {
    const WalshNumber a = WalshNumber::from_binary(digits);
    for (int t = 0; t < 20; ++t) {
      const GridFunction1D f = rng.uniform_function_1d(K);
      const int s = static_cast<int>(rng.below(K - 2));
      const DyadicInterval I{-s, rng.below(std::uint64_t{1} << s)};
      const DyadicInterval omega{s, rng.below(4)};
      GridFunction1D expected(K);
      for (std::uint64_t n = 0; n < (std::uint64_t{1} << (K - s)); ++n) {
        // Cell n of length 2^s lies in a (*) omega iff its left endpoint does.
        const WalshNumber left = walsh_mul(WalshNumber::from_integer(n), WalshNumber::power_of_two(s));
        if (!coset_membership(left, a, omega, s)) continue;
        const GridFunction1D w = wave_packet({I, {s, n}}, K);
        expected += inner(f, w) * w;
      }
      const GridFunction1D got = project_region_1d(f, I, a, omega);
      EXPECT_LE(max_abs_diff(got, expected), 1e-12) << digits;
      EXPECT_LE(max_abs_diff(project_region_1d(got, I, a, omega), got), 1e-12);
    }
  }
}
