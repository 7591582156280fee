#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dyadic/error.hpp"
#include "dyadic/selection.hpp"
#include "dyadic/wavelets.hpp"
#include "support.hpp"

using namespace dyadic;

namespace {

// A lacunary Walsh series in the second variable: a sum_j w_{2^j xor flip}.
// Every bitile is light but the tree at the top frequency collects energy at
// every level, which is what the j = +-1 phases look for.
GridFunction2D lacunary(int K, double a, std::uint64_t flip) {
  const std::size_t n = std::size_t{1} << K;
  GridFunction2D f(K);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      double s = 0;
      for (int j = 0; j < K; ++j) s += walsh_sign((std::uint64_t{1} << j) ^ flip, y, K);
      f.at(x, y) = a * s;
    }
  return f;
}

std::size_t trees_in_phase(const SelectionCertificate& c, int j) {
  for (const SelectionPhase& p : c.phases)
    if (p.j == j) return p.trees.size();
  return 0;
}

// sup over every subset of pp that is a convex tree of
// |I_T|^-1/2 ||Pi_T F||_2.
double brute_size(int i, const std::vector<Bitile>& pp, const GridFunction2D& f, const ProjectionMode& mode, int K) {
  double best = 0;
  for (std::uint32_t mask = 1; mask < (1u << pp.size()); ++mask) {
    std::vector<Bitile> t;
    for (std::size_t k = 0; k < pp.size(); ++k)
      if (mask >> k & 1) t.push_back(pp[k]);
    if (!dtest::brute_convex(t, K)) continue;
    for (const Bitile& top : t) {
      if (!std::all_of(t.begin(), t.end(), [&](const Bitile& p) { return le(p, top); })) continue;
      best = std::max(best, norm_p(proj_collection(i, t, f, mode), 2) / std::sqrt(top.area()));
    }
  }
  return best;
}

}  // namespace

TEST(Size, EmptyAndSingle) {
  Rng rng(71);
  const int K = 4;
  const GridFunction2D f = rng.uniform_function_2d(K);
  EXPECT_EQ(size(2, {}, f, {}), 0.0);
  const Bitile p{2, 1, 3, 1};
  EXPECT_NEAR(size(2, {p}, f, {}), norm_p(proj_bitile(2, p, f, {}), 2) / std::sqrt(p.area()), 1e-13);
}

TEST(Size, MatchesEnumerationOfTrees) {
  Rng rng(72);
  const int K = 3;
  const std::vector<Bitile> all = all_bitiles(K);
  int checked = 0;
  while (checked < 25) {
    const std::vector<Bitile> pp = convex_hull(dtest::random_subset(all, 2 + rng.below(3), rng));
    if (pp.size() > 8) continue;
    ++checked;
    const GridFunction2D f = rng.uniform_function_2d(K);
    const ProjectionMode mode = ProjectionMode::diagonal(WalshNumber::from_binary("1.1"));
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(size(i, pp, f, mode), brute_size(i, pp, f, mode, K), 1e-12);
  }
}

TEST(Size, NonConvexThrows) {
  const Bitile p{2, 0, 1, 0};
  EXPECT_THROW(size(2, {p, p.parent(1).parent(1)}, GridFunction2D(3), {}), DyadicError);
}

TEST(Selection, ZeroAndSmallInputsKeepEverything) {
  const int K = 4;
  const std::vector<Bitile> all = all_bitiles(K);
  const SelectionCertificate zero = select_trees(2, all, GridFunction2D(K), {}, 2);
  EXPECT_EQ(zero.remainder.size(), all.size());
  for (const SelectionPhase& p : zero.phases) EXPECT_TRUE(p.trees.empty());

  Rng rng(73);
  GridFunction2D tiny = rng.uniform_function_2d(K);
  tiny *= 1e-3;
  ASSERT_LE(size(2, all, tiny, {}), 0.5);
  const SelectionCertificate c = select_trees(2, all, tiny, {}, 1);
  EXPECT_EQ(c.remainder.size(), all.size());
  EXPECT_TRUE(verify_certificate(c, tiny, 2, 1).ok);
}

TEST(Selection, EmptyInputVerifies) {
  const SelectionCertificate c = select_trees(0, {}, GridFunction2D(3, 1.0), {}, 2);
  EXPECT_TRUE(c.remainder.empty());
  EXPECT_TRUE(verify_certificate(c, GridFunction2D(3, 1.0), 0, 2).ok);
}

TEST(Selection, RandomIndicatorsCertify) {
  Rng rng(74);
  const int K = 4;
  const std::vector<Bitile> all = all_bitiles(K);
  for (int t = 0; t < 12; ++t) {
    const GridFunction2D f = rng.random_cells(K, 1 + rng.below(256)).indicator();
    const int i = t % 3;
    ProjectionMode mode;
    if (i == 1) mode = ProjectionMode::diagonal(WalshNumber::from_binary("10.1"));
    for (int n = 1; n <= 3; ++n) {
      const SelectionCertificate c = select_trees(i, all, f, mode, n);
      const VerificationReport r = verify_certificate(c, f, i, n, mode);
      EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
      EXPECT_LE(size(i, c.remainder, f, mode), std::ldexp(1.0, -n) + 1e-12);
      EXPECT_LE(r.max_counting_ratio, 1.0);
      EXPECT_TRUE(is_convex(c.remainder));
    }
  }
}

TEST(Selection, LacunaryInputsReachTreePhases) {
  const int K = 5;
  const std::vector<Bitile> all = all_bitiles(K);
  const GridFunction2D up = lacunary(K, 0.2, 0), down = lacunary(K, 0.2, 31);
  const SelectionCertificate cu = select_trees(2, all, up, {}, 1), cd = select_trees(2, all, down, {}, 1);
  EXPECT_GE(trees_in_phase(cu, 1), 1u);
  EXPECT_GE(trees_in_phase(cd, -1), 1u);
  for (const auto* c : {&cu, &cd}) {
    const VerificationReport r = verify_certificate(*c, c == &cu ? up : down, 2, 1);
    EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
    EXPECT_LE(r.max_tree_ratio_linear, 1.0);
  }
}

TEST(Selection, PartitionOfInput) {
  Rng rng(75);
  const int K = 4;
  const std::vector<Bitile> all = all_bitiles(K);
  const GridFunction2D f = rng.random_cells(K, 100).indicator();
  const SelectionCertificate c = select_trees(0, all, f, {}, 2);
  std::vector<Bitile> seen = c.remainder;
  for (const SelectionPhase& p : c.phases)
    for (const Tree& t : p.trees) {
      EXPECT_EQ(validate_tree(t), "");
      seen.insert(seen.end(), t.members.begin(), t.members.end());
    }
  std::sort(seen.begin(), seen.end());
  std::vector<Bitile> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(seen, sorted);
}

TEST(Selection, MutatedCertificateIsRejected) {
  Rng rng(76);
  const int K = 4;
  const std::vector<Bitile> all = all_bitiles(K);
  int mutated = 0;
  for (int t = 0; t < 20 && mutated < 5; ++t) {
    const GridFunction2D f = rng.random_cells(K, 60 + rng.below(100)).indicator();
    SelectionCertificate c = select_trees(2, all, f, {}, 2);
    ASSERT_TRUE(verify_certificate(c, f, 2, 2).ok);
    for (SelectionPhase& p : c.phases)
      for (Tree& tree : p.trees)
        if (tree.top.level > 0 && mutated < 5) {
          SelectionCertificate bad = c;
          for (SelectionPhase& q : bad.phases)
            for (Tree& u : q.trees)
              if (u.top == tree.top) u.top = u.top.parent(1);
          EXPECT_FALSE(verify_certificate(bad, f, 2, 2).ok);
          ++mutated;
        }
  }
  EXPECT_GT(mutated, 0);
}

TEST(Selection, CountingRowsMatchBoxEnergy) {
  Rng rng(77);
  const int K = 4;
  const GridFunction2D f = rng.uniform_function_2d(K);
  const BoxEnergy be(2, f);
  // pi_(2) J = J0 x J1 in (x0, x1), J1 = J0 + J2.
  for (int level = 0; level <= 2; ++level)
    for (std::uint64_t j0 = 0; j0 < (1u << level); ++j0)
      for (std::uint64_t j2 = 0; j2 < (1u << level); ++j2) {
        const std::size_t len = std::size_t{16} >> level;
        double direct = 0;
        for (std::size_t a = j0 * len; a < (j0 + 1) * len; ++a)
          for (std::size_t b = (j0 ^ j2) * len; b < ((j0 ^ j2) + 1) * len; ++b) direct += f.at(a, b) * f.at(a, b);
        EXPECT_NEAR(be.energy(Box{level, j0, j2, {}}), direct / 256.0, 1e-13);
      }
}
