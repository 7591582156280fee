#include "dyadiclab/instances.hpp"

#include <algorithm>
#include <cmath>

#include "dyadic/error.hpp"
#include "dyadic/selection.hpp"
#include "dyadic/triform.hpp"

namespace dyadiclab {

using namespace dyadic;

StructuredF0 diagonal_f0(const GridFunction1D& f, const WalshNumber& a) {
  return {ProjectionMode::diagonal(a), diagonal_function(f, a)};
}

StructuredF0 fiberwise_f0(const GridFunction1D& f, const std::vector<std::uint64_t>& n) {
  std::vector<WalshNumber> w;
  w.reserve(n.size());
  for (std::uint64_t v : n) w.push_back(WalshNumber::from_integer(v));
  return {ProjectionMode::fiberwise(std::move(w)), fiberwise_function(f, n)};
}

std::vector<std::uint64_t> random_choice_function(int K, Rng& rng) {
  std::vector<std::uint64_t> n(std::size_t{1} << K);
  for (auto& v : n) v = rng.below(std::uint64_t{1} << K);
  return n;
}

std::vector<Bitile> random_convex_collection(int K, const std::vector<Bitile>& seed, int extra, Rng& rng) {
  const std::vector<Bitile> all = all_bitiles(K);
  std::vector<Bitile> pick(seed);
  for (int k = 0; k < extra; ++k) pick.push_back(all[rng.below(all.size())]);
  return convex_hull(pick);
}

Tree random_tree(int K, Rng& rng) {
  const std::vector<Bitile> all = all_bitiles(K);
  const Bitile top = all[rng.below(all.size())];
  std::vector<Bitile> pick{top};
  for (const Bitile& p : down_set(all, top))
    if (rng.below(4) == 0) pick.push_back(p);
  return Tree{top, convex_hull(pick)};
}

GridFunction2D signed_indicator(const CellSet2D& e, Rng& rng) {
  GridFunction2D f = e.indicator();
  for (double& v : f.values())
    if (v != 0 && rng.coin()) v = -1;
  return f;
}

namespace {

GridFunction1D random_on_subset(int K, std::size_t cells, Rng& rng) {
  const std::size_t n = std::size_t{1} << K;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  GridFunction1D f(K);
  for (std::size_t i = 0; i < std::min(cells, n); ++i) {
    std::swap(idx[i], idx[i + rng.below(n - i)]);
    f[idx[i]] = rng.uniform(-1, 1);
  }
  return f;
}

CellSet2D support(const GridFunction2D& f) {
  CellSet2D s(f.resolution());
  for (std::size_t a = 0; a < f.side(); ++a)
    for (std::size_t b = 0; b < f.side(); ++b)
      if (f.at(a, b) != 0) s.insert(a, b);
  return s;
}

GridFunction2D random_on(const CellSet2D& e, Rng& rng) {
  GridFunction2D f(e.resolution());
  for (std::size_t a = 0; a < f.side(); ++a)
    for (std::size_t b = 0; b < f.side(); ++b)
      if (e.contains(a, b)) f.at(a, b) = rng.uniform(-1, 1);
  return f;
}

CellSet2D random_set_of_measure(int K, int e, Rng& rng) {
  const std::size_t cells = (std::size_t{1} << (2 * K)) >> e;
  if (rng.coin()) return rng.random_cells(K, cells);
  const int level = std::min(K, (e + 1) / 2);
  return rng.random_dyadic_squares(K, level, std::size_t{1} << (2 * level - e));
}

}  // namespace

MfczInstance random_mfcz_instance(int K, const ExceptionalSetParams& base, double p1, bool fiberwise,
                                  const WalshNumber& a, int generations, Rng& rng) {
  const std::size_t n = std::size_t{1} << K;
  MfczInstance inst;
  const GridFunction1D f = random_on_subset(K, n >> rng.below(3), rng);
  const StructuredF0 s0 = fiberwise ? fiberwise_f0(f, random_choice_function(K, rng)) : diagonal_f0(f, a);
  const CellSet2D e0 = support(s0.f0);
  const CellSet2D e1 = rng.random_cells(K, n * n / 2 + rng.below(n * n / 2));
  const CellSet2D e2 = rng.random_cells(K, 2 + rng.below(7));

  ExceptionalSetParams params = base;
  const int m = static_cast<int>(rng.below(4));
  params.threshold = std::pow(e2.measure(), -1 / params.p2) * std::pow(2.0, -m / params.p2) * 0.999;
  inst.sets = exceptional_sets(e0, e1, e2, params);

  inst.f0 = s0.f0;
  if (!e0.empty()) inst.f0 *= std::pow(e0.measure(), -1 / params.p0);
  inst.f1 = random_on(inst.sets.e1_prime, rng);
  if (!e1.empty()) inst.f1 *= std::pow(e1.measure(), -1 / p1);
  inst.f2 = random_on(e2, rng);
  inst.f2 *= std::pow(e2.measure(), -1 / params.p2);

  std::vector<Bitile> current;
  for (const Bitile& p : all_bitiles(K)) {
    const std::size_t len = n >> p.level;
    bool inside = true;
    for (std::size_t x2 = p.i2 * len; inside && x2 < (p.i2 + 1) * len; ++x2)
      for (std::size_t x0 = p.i0 * len; inside && x0 < (p.i0 + 1) * len; ++x0) inside = inst.sets.b1.contains(x2, x0);
    if (!inside) current.push_back(p);
  }
  for (int level = 1; level <= generations && !current.empty(); ++level) {
    const SelectionCertificate cert = select_trees(0, current, inst.f0, s0.mode, level);
    for (const SelectionPhase& ph : cert.phases)
      for (const Tree& t : ph.trees) {
        inst.tops.push_back(t.top);
        inst.forest.insert(inst.forest.end(), t.members.begin(), t.members.end());
      }
    current = cert.remainder;
  }
  inst.good = build_good_function(inst.f2, inst.tops, inst.sets.b2);
  return inst;
}

RestrictedTrial restricted_type_trial(int K, bool fiberwise, const WalshNumber& a, Rng& rng) {
  const std::size_t n = std::size_t{1} << K;
  const int e0 = static_cast<int>(rng.below(std::min(K, 8) + 1));
  GridFunction1D f = random_on_subset(K, n >> e0, rng);
  for (std::size_t x = 0; x < n; ++x)
    if (f[x] != 0) f[x] = rng.coin() ? 1.0 : -1.0;
  const StructuredF0 s0 = fiberwise ? fiberwise_f0(f, random_choice_function(K, rng)) : diagonal_f0(f, a);
  const CellSet2D e1 = random_set_of_measure(K, static_cast<int>(rng.below(9)), rng);
  const CellSet2D e2 = random_set_of_measure(K, static_cast<int>(rng.below(9)), rng);
  const GridFunction2D f1 = signed_indicator(e1, rng), f2 = signed_indicator(e2, rng);
  const EpsilonField eps = EpsilonField::random(K, rng);

  RestrictedTrial t;
  t.value = std::abs(lambda_direct(s0.f0, f1, f2, eps));
  double m[3] = {support(s0.f0).measure(), e1.measure(), e2.measure()};
  std::sort(m, m + 3, std::greater<>());
  std::copy(m, m + 3, t.a);
  t.bound = std::sqrt(m[1] * m[2]) * (1 + std::log(m[0] / m[1]));
  t.ratio = t.bound > 0 ? t.value / t.bound : 0.0;
  return t;
}

CoverEnsemble random_cover_ensemble(int K, const std::string& field, std::size_t count, double delta, Rng& rng) {
  CoverEnsemble e;
  ParallelogramEnsemble spec;
  spec.min_level = 1;
  spec.max_level = 5;
  spec.min_height = 1.0 / 128;
  spec.max_height = 1.0 / 8;
  spec.max_slope = 0.5;
  for (std::size_t k = 0; k < count; ++k) e.all.push_back(random_parallelogram(rng, spec));
  if (field == "constant") {
    e.field = SlopeField::constant(K, rng.uniform(-0.5, 0.5));
  } else if (field == "linear") {
    e.field = SlopeField::linear(K, rng.uniform(-0.04, 0.04), rng.uniform(-0.04, 0.04), rng.uniform(-0.3, 0.3));
  } else if (field == "lipschitz") {
    e.field = SlopeField::random_lipschitz(K, 0.06, rng);
  } else {
    throw DyadicError("unknown slope field '" + field + "'");
  }
  for (std::size_t k : dense_subset(e.all, e.field, delta))
    if (lipschitz_admissible(e.all[k], e.field)) e.dense.push_back(e.all[k]);
  return e;
}

std::pair<Parallelogram, Parallelogram> random_lemma7r_pair(Rng& rng) {
  const double unit = std::ldexp(1.0, -20);
  const auto down = [&](double v) { return std::floor(v / unit) * unit; };
  const auto up = [&](double v) { return std::ceil(v / unit) * unit; };
  for (;;) {
    const Parallelogram r = random_parallelogram(rng, ParallelogramEnsemble{});
    Parallelogram rp = r;
    rp.height = up(r.height * rng.uniform(7, 15));
    rp.slope = down(r.slope + rng.uniform(-1, 1) * (r.height + rp.height) / r.length);
    rp.base_y = down(r.base_y + rng.uniform(-rp.height, r.height));
    // Hypotheses, checked directly after rounding.
    const double gap = std::abs(r.slope - rp.slope);
    const bool slopes = gap <= (r.height + rp.height) / r.length;
    const bool meet = rp.base_y <= r.base_y + r.height && r.base_y <= rp.base_y + rp.height;
    if (slopes && meet && 7 * r.height <= rp.height) return {r, rp};
  }
}

}  // namespace dyadiclab
