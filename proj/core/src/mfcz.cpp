#include "dyadic/mfcz.hpp"

#include <algorithm>
#include <cmath>
#include <span>

#include "dyadic/error.hpp"
#include "dyadic/grid_analysis.hpp"
#include "dyadic/triform.hpp"
#include "dyadic/wavelets.hpp"

namespace dyadic {

namespace {

CellSet2D transposed(const CellSet2D& s) { return CellSet2D::from_indicator(s.indicator().transposed()); }

CellSet2D normalized_level_set(const CellSet2D& e, double p, double t, bool directional) {
  if (e.empty()) return CellSet2D(e.resolution());
  const GridFunction2D ind = e.indicator();
  GridFunction2D m = directional ? directional_maximal(ind, Axis::Second, p) : q_maximal(ind, p);
  m *= std::pow(e.measure(), -1.0 / p);
  return level_set(m, t);
}

void check_exponent(double p) {
  if (!(p > 1) || !std::isfinite(p)) throw DyadicError("exponent must be finite and > 1");
}

}  // namespace

ExceptionalSets exceptional_sets(const CellSet2D& e0, const CellSet2D& e1, const CellSet2D& e2,
                                 const ExceptionalSetParams& params) {
  check_same_resolution(e0.resolution(), e1.resolution());
  check_same_resolution(e0.resolution(), e2.resolution());
  check_exponent(params.p0);
  check_exponent(params.p2);
  if (params.transpose) {
    ExceptionalSetParams swapped = params;
    swapped.transpose = false;
    std::swap(swapped.p0, swapped.p2);
    ExceptionalSets t = exceptional_sets(transposed(e2), transposed(e1), transposed(e0), swapped);
    ExceptionalSets out;
    out.b0 = transposed(t.b2);
    out.b2 = transposed(t.b0);
    out.b1 = transposed(t.b1);
    out.e1_prime = transposed(t.e1_prime);
    out.b1_measure = t.b1_measure;
    return out;
  }
  const int K = e0.resolution();
  const std::size_t n = std::size_t{1} << K;
  ExceptionalSets out;
  out.b0 = normalized_level_set(e0, params.p0, params.threshold, false);
  out.b2 = normalized_level_set(e2, params.p2, params.threshold, true);
  out.b1 = CellSet2D(K);
  // On the diagonal x1 = x0 + x2, so (x2, x0) is exceptional when
  // (x1, x2) is in B0 or (x0, x1) is in B2.
  for (std::size_t x2 = 0; x2 < n; ++x2)
    for (std::size_t x0 = 0; x0 < n; ++x0) {
      const std::size_t x1 = x0 ^ x2;
      if (out.b0.contains(x1, x2) || out.b2.contains(x0, x1)) out.b1.insert(x2, x0);
    }
  out.e1_prime = set_difference(e1, out.b1);
  out.b1_measure = out.b1.measure();
  return out;
}

std::vector<FiberInterval> maximal_fiber_intervals(const CellSet2D& b2) {
  const std::size_t n = b2.side();
  std::vector<FiberInterval> out;
  std::vector<std::size_t> prefix(n + 1);
  for (std::size_t x0 = 0; x0 < n; ++x0) {
    for (std::size_t x1 = 0; x1 < n; ++x1) prefix[x1 + 1] = prefix[x1] + (b2.contains(x0, x1) ? 1 : 0);
    // Depth-first over the dyadic intervals of the fiber, left to right.
    std::vector<std::pair<int, std::uint64_t>> stack{{0, 0}};
    while (!stack.empty()) {
      const auto [level, index] = stack.back();
      stack.pop_back();
      const std::size_t len = n >> level, first = index * len;
      const std::size_t inside = prefix[first + len] - prefix[first];
      if (inside == len) {
        out.push_back({x0, {-level, index}});
      } else if (inside > 0) {
        stack.push_back({level + 1, 2 * index + 1});
        stack.push_back({level + 1, 2 * index});
      }
    }
  }
  return out;
}

std::vector<DyadicInterval> fiber_frequencies(const FiberInterval& j, const std::vector<Bitile>& tops, int K) {
  const int l = -j.j1.scale;
  std::vector<DyadicInterval> out;
  for (const Bitile& t : tops) {
    if (l < t.level + 1) continue;  // no omega of length 1/|J1| contains omega_T
    const Box b = t.box();
    if ((j.x0 >> (K - t.level)) != b.i0 || (j.j1.index >> (l - t.level)) != (b.i0 ^ b.i2)) continue;
    out.push_back({l, t.freq >> (l - t.level - 1)});
  }
  std::sort(out.begin(), out.end(), [](const DyadicInterval& a, const DyadicInterval& b) { return a.index < b.index; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GoodFunction build_good_function(const GridFunction2D& f2, const std::vector<Bitile>& tops, const CellSet2D& b2) {
  check_same_resolution(f2.resolution(), b2.resolution());
  const int K = f2.resolution();
  const std::size_t n = f2.side();
  GoodFunction good;
  good.g = GridFunction2D(K);
  good.intervals = maximal_fiber_intervals(b2);
  for (const FiberInterval& j : good.intervals) {
    good.omegas.push_back(fiber_frequencies(j, tops, K));
    const std::span<const double> fiber(f2.row(j.x0), n);
    const std::span<double> out(good.g.row(j.x0), n);
    for (const DyadicInterval& w : good.omegas.back())
      add_packet(out, K, j.j1, w.index, packet_inner(fiber, K, j.j1, w.index));
  }
  return good;
}

ReplacementReport replacement_check(const std::vector<Bitile>& pp, const GridFunction2D& f0,
                                    const GridFunction2D& f1, const GridFunction2D& f2, const GoodFunction& good,
                                    const std::vector<Bitile>& tops, const ExceptionalSets& sets) {
  const int K = f0.resolution();
  check_same_resolution(K, f1.resolution());
  check_same_resolution(K, f2.resolution());
  check_same_resolution(K, good.g.resolution());
  const std::size_t n = f0.side();
  ReplacementReport rep;
  bool f1_ok = true, f2_ok = true;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (sets.b1.contains(a, b) && f1.at(a, b) != 0) f1_ok = false;
      if (!sets.b2.contains(a, b) && f2.at(a, b) != 0) f2_ok = false;
    }
  if (!f1_ok) rep.violations.push_back("F1 does not vanish on B1");
  if (!f2_ok) rep.violations.push_back("F2 does not vanish off B2");
  for (const Bitile& p : pp) {
    if (std::none_of(tops.begin(), tops.end(), [&](const Bitile& t) { return le(p, t); })) {
      rep.violations.push_back("bitile lies below no tree top");
      break;
    }
  }
  for (const Bitile& p : pp) {
    const std::size_t len = n >> p.level;
    bool inside = true;
    for (std::size_t x2 = p.i2 * len; inside && x2 < (p.i2 + 1) * len; ++x2)
      for (std::size_t x0 = p.i0 * len; inside && x0 < (p.i0 + 1) * len; ++x0) inside = sets.b1.contains(x2, x0);
    if (inside) {
      rep.violations.push_back("bitile shadow lies inside B1");
      break;
    }
  }
  for (const Bitile& p : pp) {
    const double lhs = lambda_bitile(p, f0, f1, f2);
    const double rhs = lambda_bitile(p, f0, f1, good.g);
    rep.max_deviation = std::max(rep.max_deviation, std::abs(lhs - rhs));
    rep.max_value = std::max(rep.max_value, std::abs(lhs));
    ++rep.checked;
  }
  return rep;
}

GNormReport g_norm_report(const GoodFunction& good, const GridFunction2D& f2, const std::vector<Bitile>& tops,
                          double p2, double p) {
  check_exponent(p2);
  if (!(p >= 1)) throw DyadicError("exponent must be >= 1");
  const int K = good.g.resolution();
  check_same_resolution(K, f2.resolution());
  const std::size_t n = good.g.side();
  const double cell = std::ldexp(1.0, -K);
  GNormReport rep;
  rep.counting = GridFunction2D(K);
  for (const Bitile& t : tops) {
    const Box b = t.box();
    const std::size_t len = n >> t.level;
    for (std::size_t x0 = b.i0 * len; x0 < (b.i0 + 1) * len; ++x0)
      for (std::size_t x1 = (b.i0 ^ b.i2) * len; x1 < ((b.i0 ^ b.i2) + 1) * len; ++x1) rep.counting.at(x0, x1) += 1;
  }
  rep.g_norm = norm_p(good.g, 2.0);
  rep.counting_norm = norm_p(rep.counting, p);
  const double dual = p2 / (p2 - 1);
  const double e = 1 - 2 / dual;
  if (rep.g_norm > 0 && rep.counting_norm > 0) rep.ratio = rep.g_norm * rep.g_norm / std::pow(rep.counting_norm, e);

  for (std::size_t k = 0; k < good.intervals.size(); ++k) {
    const FiberInterval& j = good.intervals[k];
    const CellRange r = cells_of(j.j1, K);
    double g2 = 0, sup = 0, lp = 0;
    for (std::size_t x1 = r.first; x1 < r.first + r.count; ++x1) {
      const double g = good.g.at(j.x0, x1), f = std::abs(f2.at(j.x0, x1));
      g2 += g * g * cell;
      sup = std::max(sup, f);
      lp += std::pow(f, p2) * cell;
    }
    if (g2 == 0) continue;
    const double len = std::ldexp(1.0, j.j1.scale);
    const double omegas = static_cast<double>(good.omegas[k].size());
    rep.max_sup_ratio = std::max(rep.max_sup_ratio, g2 / (omegas * sup * sup * len));
    const double hy = std::pow(omegas, e) * std::pow(lp, 2 / p2) * std::pow(len, 1 - 2 / p2);
    rep.max_hausdorff_young_ratio = std::max(rep.max_hausdorff_young_ratio, g2 / hy);
  }
  return rep;
}

}  // namespace dyadic
