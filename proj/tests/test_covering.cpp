#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dyadic/covering.hpp"
#include "dyadic/error.hpp"
#include "dyadiclab/instances.hpp"

using namespace dyadic;

namespace {

double center(std::size_t i, int K) { return (static_cast<double>(i) + 0.5) / std::ldexp(1.0, K); }

std::vector<Parallelogram> random_family(Rng& rng, std::size_t count, const ParallelogramEnsemble& spec = {}) {
  std::vector<Parallelogram> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_parallelogram(rng, spec));
  return out;
}

// Cells whose centers lie in R, straight from Parallelogram::contains.
CellSet2D cells_in(const Parallelogram& r, int K) {
  CellSet2D out(K);
  for (std::size_t ix = 0; ix < out.side(); ++ix)
    for (std::size_t iy = 0; iy < out.side(); ++iy)
      if (r.contains(center(ix, K), center(iy, K))) out.insert(ix, iy);
  return out;
}

// Closed containment of the vertical segment [lo, hi] at x in the closure of R.
bool closed_segment_in(double x, double lo, double hi, const Parallelogram& r) {
  if (x < r.left || x > r.left + r.length) return false;
  const double base = r.base_y + r.slope * (x - r.left);
  return base <= lo && hi <= base + r.height;
}

}  // namespace

TEST(Parallelogram, RasterMatchesContains) {
  Rng rng(91);
  const int K = 6;
  for (const Parallelogram& r : random_family(rng, 40)) {
    CellSet2D from_raster(K);
    double count = 0;
    for (const ColumnSpan& c : raster(r, K))
      for (std::uint32_t iy = c.y_begin; iy < c.y_end; ++iy) {
        from_raster.insert(c.x, iy);
        count += 1;
      }
    EXPECT_EQ(from_raster, cells_in(r, K));
    EXPECT_DOUBLE_EQ(grid_area(r, K), count * std::ldexp(1.0, -2 * K));
  }
}

TEST(Parallelogram, DilatesAndUncertainty) {
  const Parallelogram r = Parallelogram::over({-2, 1}, 0.25, 0.5, 0.125);
  EXPECT_EQ(r.left, 0.25);
  EXPECT_EQ(r.length, 0.25);
  EXPECT_TRUE(r.has_dyadic_shadow());
  EXPECT_EQ(r.uncertainty().lo, 0.0);
  EXPECT_EQ(r.uncertainty().hi, 1.0);

  const Parallelogram h = height_dilate(r, 7);
  EXPECT_EQ(h.left, r.left);
  EXPECT_EQ(h.length, r.length);
  EXPECT_EQ(h.center_y(), r.center_y());
  EXPECT_EQ(h.uncertainty().length(), 7 * r.uncertainty().length());

  const Parallelogram s = side_dilate(r, 2);
  EXPECT_EQ(s.center_x(), r.center_x());
  EXPECT_EQ(s.center_y(), r.center_y());
  EXPECT_EQ(s.area(), 4 * r.area());
  EXPECT_EQ(s.uncertainty().length(), r.uncertainty().length());
  EXPECT_FALSE(s.has_dyadic_shadow());

  const Interval u{0.25, 0.75};
  EXPECT_EQ(scaled(u, 2).lo, 0.0);
  EXPECT_EQ(scaled(u, 2).hi, 1.0);
}

TEST(ESet, ConstantField) {
  Rng rng(92);
  const int K = 6;
  for (const Parallelogram& r : random_family(rng, 30)) {
    const Interval w = r.uncertainty();
    for (double c : {-0.75, 0.0, 0.5}) {
      const CellSet2D e = e_set(r, SlopeField::constant(K, c));
      if (c >= w.lo && c <= w.hi) {
        EXPECT_EQ(e, cells_in(r, K));
        if (grid_area(r, K) > 0) EXPECT_EQ(density(r, SlopeField::constant(K, c)), 1.0);
      } else {
        EXPECT_TRUE(e.empty());
      }
    }
  }
}

TEST(ESet, DenseSubset) {
  Rng rng(93);
  const int K = 5;
  const SlopeField u = SlopeField::linear(K, 0.5, -0.25, 0.1);
  const std::vector<Parallelogram> rr = random_family(rng, 40);
  for (double delta : {1.0, 0.5, 0.125}) {
    std::vector<std::size_t> expected;
    for (std::size_t k = 0; k < rr.size(); ++k) {
      const double a = grid_area(rr[k], K);
      if (a > 0 && e_set(rr[k], u).measure() >= delta * a) expected.push_back(k);
    }
    EXPECT_EQ(dense_subset(rr, u, delta), expected);
  }
  EXPECT_THROW(dense_subset(rr, u, 0.0), DyadicError);
  EXPECT_THROW(dense_subset(rr, u, 1.5), DyadicError);
}

TEST(SlopeField, LipschitzCertificate) {
  Rng rng(94);
  const int K = 6;
  const SlopeField u = SlopeField::random_lipschitz(K, 2.0, rng);
  ASSERT_TRUE(u.has_certificate());
  const double h = std::ldexp(1.0, -K);
  for (std::size_t ix = 0; ix + 1 < 64; ++ix)
    for (std::size_t iy = 0; iy + 1 < 64; ++iy) {
      EXPECT_LE(std::abs(u.at(ix, iy)), 1.0);
      EXPECT_LE(std::abs(u.at(ix + 1, iy) - u.at(ix, iy)), u.lipschitz() * h + 1e-12);
      EXPECT_LE(std::abs(u.at(ix, iy + 1) - u.at(ix, iy)), u.lipschitz() * h + 1e-12);
    }
  const Parallelogram narrow = Parallelogram::over({-6, 3}, 0.1, 0, 0.1), wide = Parallelogram::over({-1, 0}, 0.1, 0, 0.1);
  EXPECT_EQ(lipschitz_admissible(narrow, u), std::ldexp(1.0, -6) * u.lipschitz() <= 1.0 / 30);
  EXPECT_FALSE(lipschitz_admissible(wide, u));
  EXPECT_FALSE(lipschitz_admissible(narrow, SlopeField(GridFunction2D(K), -1)));
}

TEST(VerticalMaximal, MatchesBruteForce) {
  Rng rng(95);
  const int K = 4;
  const GridFunction2D f = rng.uniform_function_2d(K);
  const GridFunction2D m = vertical_maximal(f);
  for (std::size_t ix = 0; ix < 16; ++ix)
    for (std::size_t iy = 0; iy < 16; ++iy) {
      double best = 0;
      for (std::size_t a = 0; a <= iy; ++a)
        for (std::size_t b = iy; b < 16; ++b) {
          double s = 0;
          for (std::size_t y = a; y <= b; ++y) s += std::abs(f.at(ix, y));
          best = std::max(best, s / static_cast<double>(b - a + 1));
        }
      EXPECT_NEAR(m.at(ix, iy), best, 1e-14);
    }
}

TEST(GreedyCover, SingleAndEmpty) {
  const int K = 6;
  EXPECT_TRUE(greedy_cover({}, K).selected.empty());
  const Parallelogram r = Parallelogram::over({-2, 2}, 0.3, 0.25, 0.0625);
  const CoverResult c = greedy_cover({r}, K);
  EXPECT_EQ(c.selected, std::vector<std::size_t>{0});
  ASSERT_EQ(c.trace.size(), 1u);
  EXPECT_EQ(c.trace[0].removed, std::vector<std::size_t>{0});
  EXPECT_TRUE(cover_violations({r}, c.selected, K).empty());
}

TEST(GreedyCover, DisjointShadowsAreAllSelected) {
  const int K = 6;
  std::vector<Parallelogram> rr;
  for (std::uint64_t i = 0; i < 4; ++i) rr.push_back(Parallelogram::over({-2, i}, 0.2 + 0.1 * i, 0.5, 0.125));
  const CoverResult c = greedy_cover(rr, K);
  std::vector<std::size_t> sel = c.selected;
  std::sort(sel.begin(), sel.end());
  EXPECT_EQ(sel, (std::vector<std::size_t>{0, 1, 2, 3}));
}

TEST(GreedyCover, StackOnOneShadowKeepsTheTallest) {
  Rng rng(96);
  const int K = 6;
  std::vector<Parallelogram> rr;
  for (int k = 0; k < 50; ++k)
    rr.push_back(Parallelogram::over({-3, 5}, rng.uniform(0, 0.8), rng.uniform(-1, 1), 1.0 / 64 + k / 1024.0));
  const CoverResult c = greedy_cover(rr, K);
  // Every column of the shadow meets the dilate of the first pick, and the
  // column average through it already clears the threshold.
  EXPECT_EQ(c.selected, std::vector<std::size_t>{49});
  EXPECT_TRUE(cover_violations(rr, c.selected, K).empty());
}

TEST(GreedyCover, RandomFamiliesAreCovered) {
  Rng rng(97);
  const int K = 7;
  for (int t = 0; t < 10; ++t) {
    const std::vector<Parallelogram> rr = random_family(rng, 60);
    const CoverResult c = greedy_cover(rr, K);
    EXPECT_TRUE(cover_violations(rr, c.selected, K).empty());
    // Selection order: shadows never grow.
    for (std::size_t k = 1; k < c.selected.size(); ++k)
      EXPECT_GE(rr[c.selected[k - 1]].length, rr[c.selected[k]].length);
    std::vector<std::size_t> removed;
    for (const CoverStep& s : c.trace) {
      removed.insert(removed.end(), s.removed.begin(), s.removed.end());
      for (double w : s.witness) EXPECT_GE(w, kCoverThreshold);
    }
    std::sort(removed.begin(), removed.end());
    ASSERT_EQ(removed.size(), rr.size());
    for (std::size_t k = 0; k < rr.size(); ++k) EXPECT_EQ(removed[k], k);
  }
}

TEST(GreedyCover, DroppingASelectionLeavesAGap) {
  const int K = 6;
  std::vector<Parallelogram> rr;
  for (std::uint64_t i = 0; i < 4; ++i) rr.push_back(Parallelogram::over({-2, i}, 0.3, 0, 0.125));
  const CoverResult c = greedy_cover(rr, K);
  std::vector<std::size_t> fewer(c.selected.begin() + 1, c.selected.end());
  EXPECT_EQ(cover_violations(rr, fewer, K), std::vector<std::size_t>{c.selected.front()});
}

TEST(Lemma7R, HypothesesAndExamples) {
  const Parallelogram r = Parallelogram::over({-2, 1}, 0.5, 0.0, 1.0 / 64);
  Parallelogram rp = r;
  EXPECT_EQ(lemma7r_check(r, rp), Lemma7R::Inapplicable);  // 7 H(R) > H(R')
  rp.height = 7 * r.height;
  EXPECT_EQ(lemma7r_check(r, rp), Lemma7R::Contained);  // congruent dilates
  // Extreme admissible placements: R' just touching R from below, and the
  // largest slope gap with intersecting uncertainty intervals.
  rp.base_y = r.base_y - rp.height;
  EXPECT_EQ(lemma7r_check(r, rp), Lemma7R::Contained);
  Parallelogram tilted = r;
  tilted.height = 7 * r.height;
  tilted.slope = r.slope + (r.height + tilted.height) / r.length;
  tilted.base_y = r.base_y + r.height;
  EXPECT_EQ(lemma7r_check(r, tilted), Lemma7R::Contained);
  Parallelogram shifted = rp;
  shifted.left += 0.25;
  EXPECT_EQ(lemma7r_check(r, shifted), Lemma7R::Inapplicable);
  Parallelogram far = rp;
  far.base_y = 0.9;
  EXPECT_EQ(lemma7r_check(r, far), Lemma7R::Inapplicable);
  Parallelogram steep = rp;
  steep.slope = 2;
  EXPECT_EQ(lemma7r_check(r, steep), Lemma7R::Inapplicable);
  EXPECT_STREQ(to_string(Lemma7R::NotContained), "not contained");
}

TEST(Lemma7R, RandomPairsAreContained) {
  Rng rng(98);
  for (int t = 0; t < 3000; ++t) {
    const auto [r, rp] = dyadiclab::random_lemma7r_pair(rng);
    ASSERT_EQ(lemma7r_check(r, rp), Lemma7R::Contained);
    // Independent check: the vertical edges of 7R sit inside the closure of 7R'.
    const Parallelogram d = height_dilate(r, 7), dp = height_dilate(rp, 7);
    for (double s : {0.0, 0.25, 0.5, 1.0}) {
      const double x = d.left + s * d.length, lo = d.base_y + d.slope * s * d.length;
      EXPECT_TRUE(closed_segment_in(x, lo, lo + d.height, dp));
    }
  }
}

TEST(LkMaximal, ConstantsAndSingle) {
  Rng rng(99);
  const int K = 5;
  const std::vector<Parallelogram> rr = random_family(rng, 6);
  CellSet2D cover(K);
  for (const Parallelogram& r : rr) cover = set_union(cover, cells_in(r, K));
  const GridFunction2D m = lk_maximal(GridFunction2D(K, 1.0), rr);
  for (std::size_t ix = 0; ix < 32; ++ix)
    for (std::size_t iy = 0; iy < 32; ++iy) EXPECT_EQ(m.at(ix, iy), cover.contains(ix, iy) ? 1.0 : 0.0);

  const GridFunction2D f = rng.uniform_function_2d(K);
  const CellSet2D only = cells_in(rr[0], K);
  double sum = 0;
  for (std::size_t ix = 0; ix < 32; ++ix)
    for (std::size_t iy = 0; iy < 32; ++iy)
      if (only.contains(ix, iy)) sum += f.at(ix, iy);
  const GridFunction2D m1 = lk_maximal(f, {rr[0]});
  for (std::size_t ix = 0; ix < 32; ++ix)
    for (std::size_t iy = 0; iy < 32; ++iy)
      EXPECT_NEAR(m1.at(ix, iy), only.contains(ix, iy) ? sum / static_cast<double>(only.count()) : 0.0, 1e-14);
}

TEST(LkMaximal, MatchesBruteForce) {
  Rng rng(100);
  const int K = 5;
  const std::vector<Parallelogram> rr = random_family(rng, 12);
  const GridFunction2D f = rng.uniform_function_2d(K, 0, 1);
  const GridFunction2D m = lk_maximal(f, rr);
  for (std::size_t ix = 0; ix < 32; ++ix)
    for (std::size_t iy = 0; iy < 32; ++iy) {
      double best = 0;
      bool any = false;
      for (const Parallelogram& r : rr) {
        if (!r.contains(center(ix, K), center(iy, K))) continue;
        const CellSet2D c = cells_in(r, K);
        double s = 0;
        for (std::size_t a = 0; a < 32; ++a)
          for (std::size_t b = 0; b < 32; ++b)
            if (c.contains(a, b)) s += f.at(a, b);
        best = any ? std::max(best, s / static_cast<double>(c.count())) : s / static_cast<double>(c.count());
        any = true;
      }
      EXPECT_NEAR(m.at(ix, iy), best, 1e-14);
    }
}

TEST(WeakNorm, MatchesBruteForce) {
  Rng rng(101);
  const int K = 3;
  const GridFunction2D f = rng.uniform_function_2d(K);
  for (double p : {1.0, 1.5, 2.0}) {
    double best = 0;
    for (double t : f.values()) {
      double m = 0;
      for (double v : f.values())
        if (std::abs(v) >= std::abs(t)) m += 1.0 / 64;
      best = std::max(best, std::abs(t) * std::pow(m, 1 / p));
    }
    EXPECT_NEAR(weak_norm(f, p), best, 1e-14);
  }
  EXPECT_NEAR(weak_norm(GridFunction2D(K, -0.5), 2.0), 0.5, 1e-15);
  EXPECT_THROW(weak_norm(f, 0.0), DyadicError);
}

TEST(Overlap, SingleParallelogram) {
  const int K = 6;
  const Parallelogram r = Parallelogram::over({-2, 1}, 0.3, 0.5, 0.125);
  const SlopeField u = SlopeField::linear(K, 1.0, 0.0, -0.2);
  const double a = grid_area(r, K), e = e_set(r, u).measure();
  for (double delta : {1.0, 0.25}) {
    const OverlapReport rep = overlap_check({r}, u, 2.0, 3, delta);
    EXPECT_DOUBLE_EQ(rep.sum_area, a);
    EXPECT_DOUBLE_EQ(rep.square, a);
    EXPECT_DOUBLE_EQ(rep.u_intersecting, a);
    EXPECT_DOUBLE_EQ(rep.e_power, e);
    EXPECT_DOUBLE_EQ(rep.square_ratio, delta);
  }
  EXPECT_THROW(overlap_check({r}, u, 0.0, 2, 1.0), DyadicError);
  EXPECT_THROW(overlap_check({r}, u, 2.0, 0, 1.0), DyadicError);
}

TEST(Overlap, MatchesBruteForce) {
  Rng rng(102);
  const int K = 5;
  const SlopeField u = SlopeField::random_lipschitz(K, 1.0, rng);
  const std::vector<Parallelogram> gg = random_family(rng, 15);
  const double cell = 1.0 / 1024;
  double square = 0, pairs = 0, triples = 0, e_power = 0;
  std::vector<CellSet2D> in, es;
  for (const Parallelogram& r : gg) {
    in.push_back(cells_in(r, K));
    es.push_back(e_set(r, u));
  }
  for (std::size_t ix = 0; ix < 32; ++ix)
    for (std::size_t iy = 0; iy < 32; ++iy) {
      std::vector<std::size_t> here;
      double ecount = 0;
      for (std::size_t k = 0; k < gg.size(); ++k) {
        if (in[k].contains(ix, iy)) here.push_back(k);
        if (es[k].contains(ix, iy)) ecount += 1;
      }
      square += static_cast<double>(here.size() * here.size()) * cell;
      e_power += std::pow(ecount, 1.5) * cell;
      for (std::size_t a : here)
        for (std::size_t b : here) {
          const Interval ua = gg[a].uncertainty(), ub = gg[b].uncertainty();
          if (ua.intersects(ub)) pairs += cell;
          for (std::size_t c : here) {
            const Interval uc = gg[c].uncertainty();
            if (std::max({ua.lo, ub.lo, uc.lo}) <= std::min({ua.hi, ub.hi, uc.hi})) triples += cell;
          }
        }
    }
  const OverlapReport r2 = overlap_check(gg, u, 1.5, 2, 0.5), r3 = overlap_check(gg, u, 1.5, 3, 0.5);
  EXPECT_NEAR(r2.square, square, 1e-12);
  EXPECT_NEAR(r2.e_power, e_power, 1e-12);
  EXPECT_NEAR(r2.u_intersecting, pairs, 1e-12);
  EXPECT_NEAR(r3.u_intersecting, triples, 1e-12);
}
