#include "dyadic/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dyadic/error.hpp"

namespace dyadic {

Interval scaled(const Interval& u, double a) {
  const double c = (u.lo + u.hi) / 2, h = (u.hi - u.lo) / 2 * a;
  return {c - h, c + h};
}

Parallelogram Parallelogram::over(const DyadicInterval& shadow, double base_y, double slope, double height) {
  if (!shadow.is_time()) throw DyadicError("shadow must be a subinterval of [0,1)");
  Parallelogram r;
  r.left = std::ldexp(static_cast<double>(shadow.index), shadow.scale);
  r.length = std::ldexp(1.0, shadow.scale);
  r.base_y = base_y;
  r.slope = slope;
  r.height = height;
  return r;
}

Interval Parallelogram::uncertainty() const { return {slope - height / length, slope + height / length}; }

bool Parallelogram::contains(double x, double y) const {
  if (!(x >= left && x < left + length)) return false;
  const double lo = base_y + slope * (x - left);
  return y >= lo && y < lo + height;
}

bool Parallelogram::has_dyadic_shadow() const {
  int e = 0;
  const double m = std::frexp(length, &e);
  if (m != 0.5 || e > 1) return false;
  const double k = left / length;
  return k == std::floor(k) && k >= 0 && left + length <= 1;
}

Parallelogram side_dilate(const Parallelogram& r, double a) {
  Parallelogram d = r;
  d.length = a * r.length;
  d.height = a * r.height;
  d.left = r.center_x() - d.length / 2;
  d.base_y = r.center_y() - r.slope * d.length / 2 - d.height / 2;
  return d;
}

Parallelogram height_dilate(const Parallelogram& r, double c) {
  Parallelogram d = r;
  d.height = c * r.height;
  d.base_y = r.base_y - (c - 1) * r.height / 2;
  return d;
}

namespace {

// First cell whose center (i + 1/2) / N is >= v.
std::int64_t first_center_at_or_after(double v, double n) {
  return static_cast<std::int64_t>(std::ceil(v * n - 0.5));
}

void check_parallelogram(const Parallelogram& r) {
  if (!std::isfinite(r.left) || !std::isfinite(r.base_y) || !std::isfinite(r.slope) || !(r.length > 0) ||
      !(r.height > 0) || !std::isfinite(r.length) || !std::isfinite(r.height))
    throw DyadicError("parallelogram needs finite data and positive length and height");
}

// Superlevel set {M_V S >= lambda} in one column, with a witnessing window
// average per cell, via prefix minima and suffix maxima of P(t) - lambda t.
void column_superlevel(const double* s, std::size_t n, double lambda, std::uint8_t* inside, double* witness) {
  std::vector<double> p(n + 1, 0.0);
  for (std::size_t t = 0; t < n; ++t) p[t + 1] = p[t] + std::abs(s[t]);
  const auto q = [&](std::size_t t) { return p[t] - lambda * static_cast<double>(t); };
  std::vector<std::size_t> arg_max(n + 1);
  arg_max[n] = n;
  for (std::size_t t = n; t-- > 1;) arg_max[t] = q(t) >= q(arg_max[t + 1]) ? t : arg_max[t + 1];
  std::size_t arg_min = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (q(i) < q(arg_min)) arg_min = i;
    const std::size_t b = arg_max[i + 1];
    inside[i] = q(b) - q(arg_min) >= 0;
    witness[i] = (p[b] - p[arg_min]) / static_cast<double>(b - arg_min);
  }
}

}  // namespace

std::vector<ColumnSpan> raster(const Parallelogram& r, int K) {
  const double n = std::ldexp(1.0, K);
  const std::int64_t side = std::int64_t{1} << K;
  std::vector<ColumnSpan> out;
  const std::int64_t x0 = std::max<std::int64_t>(0, first_center_at_or_after(r.left, n));
  const std::int64_t x1 = std::min(side, first_center_at_or_after(r.left + r.length, n));
  for (std::int64_t ix = x0; ix < x1; ++ix) {
    const double x = (static_cast<double>(ix) + 0.5) / n;
    const double lo = r.base_y + r.slope * (x - r.left);
    const std::int64_t y0 = std::max<std::int64_t>(0, first_center_at_or_after(lo, n));
    const std::int64_t y1 = std::min(side, first_center_at_or_after(lo + r.height, n));
    if (y0 < y1)
      out.push_back({static_cast<std::uint32_t>(ix), static_cast<std::uint32_t>(y0), static_cast<std::uint32_t>(y1)});
  }
  return out;
}

double grid_area(const Parallelogram& r, int K) {
  std::uint64_t c = 0;
  for (const ColumnSpan& s : raster(r, K)) c += s.y_end - s.y_begin;
  return std::ldexp(static_cast<double>(c), -2 * K);
}

SlopeField::SlopeField(GridFunction2D values, double lipschitz) : u_(std::move(values)), lip_(lipschitz) {
  for (double v : u_.values())
    if (!(v >= -1 && v <= 1)) throw DyadicError("slope values must lie in [-1, 1]");
}

SlopeField SlopeField::constant(int K, double c) { return SlopeField(GridFunction2D(K, c), 0.0); }

SlopeField SlopeField::linear(int K, double a, double b, double c) {
  GridFunction2D u(K);
  const double n = std::ldexp(1.0, K);
  for (std::size_t ix = 0; ix < u.side(); ++ix)
    for (std::size_t iy = 0; iy < u.side(); ++iy)
      u.at(ix, iy) = std::clamp(a * (ix + 0.5) / n + b * (iy + 0.5) / n + c, -1.0, 1.0);
  return SlopeField(std::move(u), std::hypot(a, b));
}

SlopeField SlopeField::random_lipschitz(int K, double lipschitz, Rng& rng) {
  constexpr int kWaves = 3;
  double fx[kWaves], fy[kWaves], phase[kWaves], amp[kWaves];
  double bound = 0;
  for (int w = 0; w < kWaves; ++w) {
    fx[w] = rng.uniform(-2, 2);
    fy[w] = rng.uniform(-2, 2);
    phase[w] = rng.uniform(0, 2 * std::numbers::pi);
    amp[w] = rng.uniform(0.2, 1);
    bound += amp[w] * 2 * std::numbers::pi * std::hypot(fx[w], fy[w]);
  }
  const double scale = bound > 0 ? lipschitz / bound : 0.0;
  GridFunction2D u(K);
  const double n = std::ldexp(1.0, K);
  for (std::size_t ix = 0; ix < u.side(); ++ix)
    for (std::size_t iy = 0; iy < u.side(); ++iy) {
      const double x = (ix + 0.5) / n, y = (iy + 0.5) / n;
      double v = 0;
      for (int w = 0; w < kWaves; ++w) v += scale * amp[w] * std::sin(2 * std::numbers::pi * (fx[w] * x + fy[w] * y) + phase[w]);
      u.at(ix, iy) = std::clamp(v, -1.0, 1.0);
    }
  return SlopeField(std::move(u), bound > 0 ? lipschitz : 0.0);
}

bool lipschitz_admissible(const Parallelogram& r, const SlopeField& u) {
  return u.has_certificate() && r.length * u.lipschitz() <= 1.0 / 30;
}

CellSet2D e_set(const Parallelogram& r, const SlopeField& u) {
  const int K = u.resolution();
  const Interval w = r.uncertainty();
  CellSet2D e(K);
  for (const ColumnSpan& s : raster(r, K))
    for (std::uint32_t iy = s.y_begin; iy < s.y_end; ++iy) {
      const double v = u.at(s.x, iy);
      if (v >= w.lo && v <= w.hi) e.insert(s.x, iy);
    }
  return e;
}

double density(const Parallelogram& r, const SlopeField& u) {
  const double a = grid_area(r, u.resolution());
  return a > 0 ? e_set(r, u).measure() / a : 0.0;
}

std::vector<std::size_t> dense_subset(const std::vector<Parallelogram>& rr, const SlopeField& u, double delta) {
  if (!(delta > 0 && delta <= 1)) throw DyadicError("delta must lie in (0, 1]");
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < rr.size(); ++k) {
    const double a = grid_area(rr[k], u.resolution());
    if (a > 0 && e_set(rr[k], u).measure() >= delta * a) out.push_back(k);
  }
  return out;
}

CoverResult greedy_cover(const std::vector<Parallelogram>& rr, int K) {
  for (const Parallelogram& r : rr) check_parallelogram(r);
  const std::size_t n = std::size_t{1} << K;
  std::vector<std::vector<ColumnSpan>> cells(rr.size());
  for (std::size_t k = 0; k < rr.size(); ++k) cells[k] = raster(rr[k], K);

  std::vector<std::size_t> order(rr.size());
  for (std::size_t k = 0; k < rr.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (rr[a].length != rr[b].length) return rr[a].length > rr[b].length;
    return rr[a].height > rr[b].height;
  });

  // Column-major copies of sum 1_{7R'} and its superlevel data.
  std::vector<double> s(n * n, 0.0), witness(n * n, 0.0);
  std::vector<std::uint8_t> inside(n * n, 0);
  std::vector<char> alive(rr.size(), 1);
  std::size_t cursor = 0;
  CoverResult res;
  for (;;) {
    while (cursor < order.size() && !alive[order[cursor]]) ++cursor;
    if (cursor == order.size()) break;
    const std::size_t pick = order[cursor];
    res.selected.push_back(pick);
    const std::vector<ColumnSpan> dilate = raster(height_dilate(rr[pick], kCoverDilate), K);
    for (const ColumnSpan& c : dilate)
      for (std::uint32_t iy = c.y_begin; iy < c.y_end; ++iy) s[c.x * n + iy] += 1;
    std::uint32_t xlo = static_cast<std::uint32_t>(n), xhi = 0;
    for (const ColumnSpan& c : dilate) {
      column_superlevel(&s[c.x * n], n, kCoverThreshold, &inside[c.x * n], &witness[c.x * n]);
      xlo = std::min(xlo, c.x);
      xhi = std::max(xhi, c.x);
    }
    CoverStep step;
    step.selected = pick;
    for (std::size_t k = 0; k < rr.size(); ++k) {
      if (!alive[k]) continue;
      const auto& ck = cells[k];
      if (k != pick && !ck.empty() && (ck.back().x < xlo || ck.front().x > xhi)) continue;
      bool in = true;
      double w = INFINITY;
      for (const ColumnSpan& c : ck)
        for (std::uint32_t iy = c.y_begin; in && iy < c.y_end; ++iy) {
          in = inside[c.x * n + iy] != 0;
          w = std::min(w, witness[c.x * n + iy]);
        }
      if (!in) continue;
      alive[k] = 0;
      step.removed.push_back(k);
      step.witness.push_back(w);
    }
    if (alive[pick]) throw DyadicError("selected parallelogram was not covered by its own dilate");
    res.trace.push_back(std::move(step));
  }
  return res;
}

GridFunction2D vertical_maximal(const GridFunction2D& f) {
  const std::size_t n = f.side();
  GridFunction2D out(f.resolution());
  std::vector<double> best(n), suffix(n);
  for (std::size_t ix = 0; ix < n; ++ix) {
    std::fill(best.begin(), best.end(), 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      double sum = 0;
      for (std::size_t b = a; b < n; ++b) {
        sum += std::abs(f.at(ix, b));
        suffix[b] = sum / static_cast<double>(b - a + 1);
      }
      for (std::size_t b = n - 1; b > a; --b) suffix[b - 1] = std::max(suffix[b - 1], suffix[b]);
      for (std::size_t i = a; i < n; ++i) best[i] = std::max(best[i], suffix[i]);
    }
    for (std::size_t iy = 0; iy < n; ++iy) out.at(ix, iy) = best[iy];
  }
  return out;
}

std::vector<std::size_t> cover_violations(const std::vector<Parallelogram>& rr, const std::vector<std::size_t>& selected,
                                          int K) {
  GridFunction2D s(K);
  for (std::size_t k : selected) {
    const Parallelogram d = height_dilate(rr.at(k), kCoverDilate);
    const double cx = std::ldexp(1.0, K);
    for (std::size_t ix = 0; ix < s.side(); ++ix)
      for (std::size_t iy = 0; iy < s.side(); ++iy)
        if (d.contains((ix + 0.5) / cx, (iy + 0.5) / cx)) s.at(ix, iy) += 1;
  }
  const GridFunction2D m = vertical_maximal(s);
  std::vector<std::size_t> bad;
  for (std::size_t k = 0; k < rr.size(); ++k) {
    bool ok = true;
    for (const ColumnSpan& c : raster(rr[k], K))
      for (std::uint32_t iy = c.y_begin; ok && iy < c.y_end; ++iy) ok = m.at(c.x, iy) >= kCoverThreshold;
    if (!ok) bad.push_back(k);
  }
  return bad;
}

OverlapReport overlap_check(const std::vector<Parallelogram>& gg, const SlopeField& u, double q, int n, double delta) {
  if (!(q > 0)) throw DyadicError("overlap exponent must be positive");
  if (n < 1) throw DyadicError("tuple length must be at least 1");
  if (!(delta > 0 && delta <= 1)) throw DyadicError("delta must lie in (0, 1]");
  const int K = u.resolution();
  const std::size_t side = std::size_t{1} << K;
  const double cell = std::ldexp(1.0, -2 * K);
  std::vector<std::vector<std::uint32_t>> at(side * side);
  std::vector<double> e_count(side * side, 0.0);
  OverlapReport rep;
  for (std::size_t k = 0; k < gg.size(); ++k) {
    const Interval w = gg[k].uncertainty();
    for (const ColumnSpan& c : raster(gg[k], K))
      for (std::uint32_t iy = c.y_begin; iy < c.y_end; ++iy) {
        at[c.x * side + iy].push_back(static_cast<std::uint32_t>(k));
        const double v = u.at(c.x, iy);
        if (v >= w.lo && v <= w.hi) e_count[c.x * side + iy] += 1;
        rep.sum_area += cell;
      }
  }
  std::vector<Interval> slopes(gg.size());
  for (std::size_t k = 0; k < gg.size(); ++k) slopes[k] = gg[k].uncertainty();
  for (std::size_t c = 0; c < side * side; ++c) {
    rep.e_power += std::pow(e_count[c], q) * cell;
    const auto& here = at[c];
    const double m = static_cast<double>(here.size());
    rep.square += m * m * cell;
    // Ordered n-tuples (with repetition) whose slope intervals share a point.
    // In one dimension that means max lo <= min hi; count the tuples by their
    // element of largest lo.
    std::vector<std::uint32_t> by_lo(here);
    std::sort(by_lo.begin(), by_lo.end(), [&](std::uint32_t a, std::uint32_t b) {
      return slopes[a].lo != slopes[b].lo ? slopes[a].lo < slopes[b].lo : a < b;
    });
    double tuples = 0;
    for (std::size_t j = 0; j < by_lo.size(); ++j) {
      double admissible = 0;
      for (std::size_t k = 0; k <= j; ++k)
        if (slopes[by_lo[k]].hi >= slopes[by_lo[j]].lo) admissible += 1;
      tuples += std::pow(admissible, n) - std::pow(admissible - 1, n);
    }
    rep.u_intersecting += tuples * cell;
  }
  if (rep.sum_area > 0) {
    rep.e_ratio = rep.e_power / rep.sum_area;
    rep.u_ratio = rep.u_intersecting / rep.sum_area;
    rep.square_ratio = rep.square / (rep.sum_area / delta);
  }
  return rep;
}

const char* to_string(Lemma7R r) {
  switch (r) {
    case Lemma7R::Contained:
      return "contained";
    case Lemma7R::NotContained:
      return "not contained";
    case Lemma7R::Inapplicable:
      return "inapplicable";
  }
  return "?";
}

Lemma7R lemma7r_check(const Parallelogram& r, const Parallelogram& rp) {
  if (r.left != rp.left || r.length != rp.length) return Lemma7R::Inapplicable;
  if (!r.uncertainty().intersects(rp.uncertainty())) return Lemma7R::Inapplicable;
  if (!(7 * r.height <= rp.height)) return Lemma7R::Inapplicable;
  // Over a common shadow, closed R and R' meet unless one lies strictly above
  // the other along the whole shadow.
  const double rise = r.slope * r.length, rise_p = rp.slope * rp.length;
  const bool below = rp.base_y + rp.height < r.base_y && rp.base_y + rise_p + rp.height < r.base_y + rise;
  const bool above = r.base_y + r.height < rp.base_y && r.base_y + rise + r.height < rp.base_y + rise_p;
  if (below || above) return Lemma7R::Inapplicable;
  // Compare the vertical edges of the dilates at both ends of the shadow.
  const double lo = r.base_y - 3 * r.height, hi = r.base_y + 4 * r.height;
  const double lo_p = rp.base_y - 3 * rp.height, hi_p = rp.base_y + 4 * rp.height;
  const bool left_ok = lo_p <= lo && hi <= hi_p;
  const bool right_ok = lo_p + rise_p <= lo + rise && hi + rise <= hi_p + rise_p;
  return left_ok && right_ok ? Lemma7R::Contained : Lemma7R::NotContained;
}

GridFunction2D lk_maximal(const GridFunction2D& f, const std::vector<Parallelogram>& rr) {
  const int K = f.resolution();
  const std::size_t n = f.side();
  GridFunction2D out(K);
  std::vector<char> covered(n * n, 0);
  for (const Parallelogram& r : rr) {
    const std::vector<ColumnSpan> cells = raster(r, K);
    double sum = 0, count = 0;
    for (const ColumnSpan& c : cells)
      for (std::uint32_t iy = c.y_begin; iy < c.y_end; ++iy) {
        sum += f.at(c.x, iy);
        count += 1;
      }
    if (count == 0) continue;
    const double avg = sum / count;
    for (const ColumnSpan& c : cells)
      for (std::uint32_t iy = c.y_begin; iy < c.y_end; ++iy) {
        char& seen = covered[c.x * n + iy];
        out.at(c.x, iy) = seen ? std::max(out.at(c.x, iy), avg) : avg;
        seen = 1;
      }
  }
  return out;
}

double weak_norm(const GridFunction2D& f, double p) {
  if (!(p > 0)) throw DyadicError("exponent must be positive");
  std::vector<double> v;
  v.reserve(f.size());
  for (double x : f.values()) v.push_back(std::abs(x));
  std::sort(v.begin(), v.end(), std::greater<>());
  const double cell = std::ldexp(1.0, -2 * f.resolution());
  double best = 0;
  for (std::size_t k = 0; k < v.size(); ++k) best = std::max(best, v[k] * std::pow((k + 1) * cell, 1 / p));
  return best;
}

Parallelogram random_parallelogram(Rng& rng, const ParallelogramEnsemble& spec) {
  if (spec.min_level < 0 || spec.max_level < spec.min_level || !(spec.min_height > 0) ||
      spec.max_height < spec.min_height || spec.bits < 1 || spec.bits > 40)
    throw DyadicError("invalid parallelogram ensemble");
  const double unit = std::ldexp(1.0, -spec.bits);
  const auto round = [&](double v) { return std::round(v / unit) * unit; };
  const int level = spec.min_level + static_cast<int>(rng.below(spec.max_level - spec.min_level + 1));
  const std::uint64_t index = rng.below(std::uint64_t{1} << level);
  const double height = std::max(unit, round(rng.uniform(spec.min_height, spec.max_height)));
  const double slope = round(rng.uniform(-spec.max_slope, spec.max_slope));
  const double length = std::ldexp(1.0, -level);
  // Keep most of the parallelogram inside the unit square.
  const double lowest = std::max(0.0, -slope * length);
  const double highest = std::min(1.0, 1.0 - slope * length) - height;
  const double base = round(highest > lowest ? rng.uniform(lowest, highest) : lowest);
  return Parallelogram::over({-level, index}, base, slope, height);
}

}  // namespace dyadic
