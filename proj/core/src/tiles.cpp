#include "dyadic/tiles.hpp"

#include <algorithm>
#include <cmath>

#include "dyadic/error.hpp"
#include "dyadic/wavelets.hpp"

namespace dyadic {

namespace {

bool nested_time(int coarse_level, std::uint64_t coarse, int fine_level, std::uint64_t fine) {
  return (fine >> (fine_level - coarse_level)) == coarse;
}

std::size_t mix(std::size_t h, std::uint64_t v) {
  return h ^ (std::hash<std::uint64_t>{}(v) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2));
}

std::vector<double> column(const GridFunction2D& f, std::size_t j) {
  std::vector<double> c(f.side());
  for (std::size_t i = 0; i < f.side(); ++i) c[i] = f.at(i, j);
  return c;
}

void add_column(GridFunction2D& f, std::size_t j, const std::vector<double>& c) {
  for (std::size_t i = 0; i < f.side(); ++i) f.at(i, j) += c[i];
}

void check_index(int i) {
  if (i < 0 || i > 2) throw DyadicError("function index must be 0, 1 or 2");
}

void check_tile(const Tile& p, int K) {
  if (p.level < 0 || p.level > K) throw DyadicError("tile level outside [0, K]");
  const std::uint64_t n = std::uint64_t{1} << p.level;
  if (p.i0 >= n || p.i2 >= n) throw DyadicError("tile is not localized to [0,1)");
  if (p.freq >= (std::uint64_t{1} << (K - p.level))) throw DyadicError("frequency beyond resolution");
}

}  // namespace

bool le(const Box& p, const Box& pp) {
  if (p.level < pp.level) return false;
  return nested_time(pp.level, pp.i0, p.level, p.i0) && nested_time(pp.level, pp.i2, p.level, p.i2) &&
         p.omega.contains(pp.omega);
}

bool intersects(const Box& p, const Box& pp) {
  const Box& fine = p.level >= pp.level ? p : pp;
  const Box& coarse = p.level >= pp.level ? pp : p;
  if (!nested_time(coarse.level, coarse.i0, fine.level, fine.i0)) return false;
  if (!nested_time(coarse.level, coarse.i2, fine.level, fine.i2)) return false;
  return p.omega.contains(pp.omega) || pp.omega.contains(p.omega);
}

double Bitile::area() const { return std::ldexp(1.0, -2 * level); }

Tile Bitile::half(int j) const {
  if (j != 1 && j != -1) throw DyadicError("half index must be +1 or -1");
  return {level, i0, i2, 2 * freq + (j == 1 ? 0 : 1)};
}

std::vector<Tile> Bitile::time_split() const {
  std::vector<Tile> out;
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 2; ++b) out.push_back({level + 1, 2 * i0 + a, 2 * i2 + b, freq});
  return out;
}

Bitile Bitile::parent(int j) const {
  if (level == 0) throw DyadicError("bitile of level 0 has no parent");
  return {level - 1, i0 >> 1, i2 >> 1, half(j).freq};
}

std::size_t BitileHash::operator()(const Bitile& p) const {
  std::size_t h = std::hash<int>{}(p.level);
  h = mix(h, p.i0);
  h = mix(h, p.i2);
  return mix(h, p.freq);
}

std::size_t TileHash::operator()(const Tile& p) const {
  return BitileHash{}(Bitile{p.level, p.i0, p.i2, p.freq});
}

std::vector<Bitile> all_bitiles(int K) {
  if (K < 1) throw DyadicError("resolution too small for bitiles");
  std::vector<Bitile> out;
  for (int j = 0; j < K; ++j) {
    const std::uint64_t n = std::uint64_t{1} << j;
    const std::uint64_t nf = std::uint64_t{1} << (K - 1 - j);
    for (std::uint64_t i0 = 0; i0 < n; ++i0)
      for (std::uint64_t i2 = 0; i2 < n; ++i2)
        for (std::uint64_t f = 0; f < nf; ++f) out.push_back({j, i0, i2, f});
  }
  return out;
}

void check_bitile(const Bitile& p, int K) {
  if (p.level < 0 || p.level > K - 1) throw DyadicError("bitile level below resolution");
  const std::uint64_t n = std::uint64_t{1} << p.level;
  if (p.i0 >= n || p.i2 >= n) throw DyadicError("bitile is not localized to [0,1)");
  if (p.freq >= (std::uint64_t{1} << (K - 1 - p.level))) throw DyadicError("frequency beyond resolution");
}

namespace {

// The chain element at level l between p (finer) and pp (coarser), p < pp.
Bitile chain_element(const Bitile& p, const Bitile& pp, int l) {
  return {l, p.i0 >> (p.level - l), p.i2 >> (p.level - l), pp.freq >> (l - pp.level)};
}

}  // namespace

bool is_convex(const std::vector<Bitile>& pp) {
  const BitileSet s(pp.begin(), pp.end());
  for (const Bitile& p : pp)
    for (const Bitile& q : pp) {
      if (q.level >= p.level - 1 || !le(p, q)) continue;
      if (!s.count(chain_element(p, q, p.level - 1))) return false;
    }
  return true;
}

std::vector<Bitile> convex_hull(const std::vector<Bitile>& pp) {
  BitileSet s(pp.begin(), pp.end());
  std::vector<Bitile> out(s.begin(), s.end());
  for (const Bitile& p : pp)
    for (const Bitile& q : pp) {
      if (q.level >= p.level - 1 || !le(p, q)) continue;
      for (int l = q.level + 1; l < p.level; ++l) {
        const Bitile c = chain_element(p, q, l);
        if (s.insert(c).second) out.push_back(c);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Bitile> down_set(const std::vector<Bitile>& pp, const Bitile& top) {
  std::vector<Bitile> out;
  for (const Bitile& p : pp)
    if (le(p, top)) out.push_back(p);
  return out;
}

std::vector<Tile> disjoint_tiling(const std::vector<Bitile>& pp) {
  if (!is_convex(pp)) throw DyadicError("convexity violated");
  const BitileSet s(pp.begin(), pp.end());
  std::vector<Bitile> order(s.begin(), s.end());
  std::sort(order.begin(), order.end());  // level ascending = coarsest first
  std::vector<Tile> out;
  for (const Bitile& p : order)
    for (int j : {1, -1})
      if (p.level == 0 || !s.count(p.parent(j))) out.push_back(p.half(j));
  return out;
}

std::vector<Bitile> Tree::part(int j) const {
  std::vector<Bitile> out;
  for (const Bitile& p : members)
    if (le(p.half(j).box(), top.box())) out.push_back(p);
  return out;
}

std::string validate_tree(const Tree& t) {
  if (std::find(t.members.begin(), t.members.end(), t.top) == t.members.end())
    return "tree top is not a member";
  for (const Bitile& p : t.members)
    if (!le(p, t.top)) return "tree member not below the top";
  if (!is_convex(t.members)) return "tree is not convex";
  return {};
}

ProjectionMode ProjectionMode::diagonal(const WalshNumber& a) {
  if (a.is_zero()) throw DyadicError("degenerate multiplier");
  if (a.hi() < 0) throw DyadicError("diagonal parameter must satisfy |a| >= 1");
  ProjectionMode m;
  m.kind_ = Kind::Diagonal;
  m.a_ = a;
  return m;
}

ProjectionMode ProjectionMode::fiberwise(std::vector<WalshNumber> n) {
  ProjectionMode m;
  m.kind_ = Kind::Fiberwise;
  m.n_ = std::move(n);
  return m;
}

namespace {

// Calls visit(fiber_index, projected_fiber) for every fiber of Pi_p^(i) F
// (rows for i = 2, columns for i = 0, 1). Fiberwise i = 1 is handled apart.
template <class Visit>
void for_each_projected_fiber(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode,
                              Visit&& visit) {
  const int K = f.resolution();
  check_tile(p, K);
  const DyadicInterval outer = i == 2 ? p.I0() : i == 0 ? p.I2() : p.I0();
  const DyadicInterval inner = i == 1 ? p.I2() : p.I1();
  CellRange freq;
  if (i == 1) {
    freq = region_frequency_cells(K, inner, mode.a(), p.omega());
  } else {
    freq = {p.freq, 1};
  }
  const CellRange fibers = cells_of(outer, K);
  std::vector<double> buf(f.side());
  for (std::uint64_t x = fibers.first; x < fibers.first + fibers.count; ++x) {
    std::vector<double> src = i == 2 ? std::vector<double>(f.row(x), f.row(x) + f.side()) : column(f, x);
    std::fill(buf.begin(), buf.end(), 0.0);
    if (freq.count == 1) {
      const double c = packet_inner(src, K, inner, freq.first);
      add_packet(buf, K, inner, freq.first, c);
    } else {
      add_region_projection(src, K, inner, freq, buf);
    }
    visit(x, buf);
  }
}

void check_mode(int i, const ProjectionMode& mode, int K) {
  if (i != 1) return;
  if (mode.kind() == ProjectionMode::Kind::None) throw DyadicError("projection mode required for index 1");
  if (mode.kind() == ProjectionMode::Kind::Fiberwise && mode.n().size() != (std::size_t{1} << K))
    throw DyadicError("fiberwise frequency assignment needs 2^K entries");
}

}  // namespace

void add_tile_projection(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode,
                         GridFunction2D& out) {
  check_index(i);
  check_same_resolution(f.resolution(), out.resolution());
  const int K = f.resolution();
  check_mode(i, mode, K);
  if (i == 1 && mode.kind() == ProjectionMode::Kind::Fiberwise) {
    check_tile(p, K);
    const CellRange r0 = cells_of(p.I0(), K), r2 = cells_of(p.I2(), K);
    const DyadicInterval w = p.omega();
    for (std::uint64_t x2 = r2.first; x2 < r2.first + r2.count; ++x2) {
      if (!w.contains(mode.n()[x2])) continue;
      for (std::uint64_t x0 = r0.first; x0 < r0.first + r0.count; ++x0) out.at(x2, x0) += f.at(x2, x0);
    }
    return;
  }
  for_each_projected_fiber(i, p, f, mode, [&](std::uint64_t x, const std::vector<double>& v) {
    if (i == 2) {
      double* row = out.row(x);
      for (std::size_t k = 0; k < v.size(); ++k) row[k] += v[k];
    } else {
      add_column(out, x, v);
    }
  });
}

GridFunction2D proj_tile(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode) {
  GridFunction2D out(f.resolution());
  add_tile_projection(i, p, f, mode, out);
  return out;
}

double tile_projection_norm2(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode) {
  check_index(i);
  const int K = f.resolution();
  check_mode(i, mode, K);
  double s = 0;
  if (i == 1 && mode.kind() == ProjectionMode::Kind::Fiberwise) {
    check_tile(p, K);
    const CellRange r0 = cells_of(p.I0(), K), r2 = cells_of(p.I2(), K);
    for (std::uint64_t x2 = r2.first; x2 < r2.first + r2.count; ++x2) {
      if (!p.omega().contains(mode.n()[x2])) continue;
      for (std::uint64_t x0 = r0.first; x0 < r0.first + r0.count; ++x0) s += f.at(x2, x0) * f.at(x2, x0);
    }
    return std::ldexp(s, -2 * K);
  }
  for_each_projected_fiber(i, p, f, mode, [&](std::uint64_t, const std::vector<double>& v) {
    for (double x : v) s += x * x;
  });
  return std::ldexp(s, -2 * K);
}

GridFunction2D proj_bitile(int i, const Bitile& p, const GridFunction2D& f, const ProjectionMode& mode) {
  GridFunction2D out(f.resolution());
  for (int j : {1, -1}) add_tile_projection(i, p.half(j), f, mode, out);
  return out;
}

GridFunction2D proj_bitile_time_split(int i, const Bitile& p, const GridFunction2D& f,
                                      const ProjectionMode& mode) {
  GridFunction2D out(f.resolution());
  for (const Tile& t : p.time_split()) add_tile_projection(i, t, f, mode, out);
  return out;
}

GridFunction2D proj_collection(int i, const std::vector<Bitile>& pp, const GridFunction2D& f,
                               const ProjectionMode& mode) {
  GridFunction2D out(f.resolution());
  for (const Tile& t : disjoint_tiling(pp)) add_tile_projection(i, t, f, mode, out);
  return out;
}

std::pair<DyadicInterval, DyadicInterval> projection_support(int i, const Box& p) {
  check_index(i);
  if (i == 0) return {p.I1(), p.I2()};
  if (i == 1) return {p.I2(), p.I0()};
  return {p.I0(), p.I1()};
}

GridFunction2D diagonal_function(const GridFunction1D& f, const WalshNumber& a) {
  if (a.is_zero()) throw DyadicError("degenerate multiplier");
  if (a.hi() < 0) throw DyadicError("diagonal parameter must satisfy |a| >= 1");
  const int K = f.resolution();
  const int frac = std::max(0, -a.lo());
  if (frac > 40) throw DyadicError("diagonal parameter has too many fractional digits");
  const auto A = static_cast<std::uint64_t>(a.raw() >> (WalshNumber::kFracBits - frac));
  const int shift = frac + a.hi();
  GridFunction2D out(K);
  for (std::uint64_t m1 = 0; m1 < out.side(); ++m1)
    for (std::uint64_t m2 = 0; m2 < out.side(); ++m2) {
      const u128 y = (static_cast<u128>(m1) << frac) ^ clmul(A, m2);
      out.at(m1, m2) = f[static_cast<std::size_t>(y >> shift)];
    }
  return out;
}

GridFunction2D fiberwise_function(const GridFunction1D& f, const std::vector<std::uint64_t>& n) {
  const int K = f.resolution();
  if (n.size() != f.size()) throw DyadicError("fiberwise frequency assignment needs 2^K entries");
  GridFunction2D out(K);
  for (std::uint64_t m2 = 0; m2 < out.side(); ++m2) {
    if ((n[m2] >> K) != 0) throw DyadicError("frequency beyond resolution");
    for (std::uint64_t m1 = 0; m1 < out.side(); ++m1) out.at(m1, m2) = f[m2] * walsh_sign(n[m2], m1, K);
  }
  return out;
}

TileNormCache::TileNormCache(int i, const GridFunction2D& f, const ProjectionMode& mode)
    : i_(i), f_(f), mode_(mode) {}

double TileNormCache::norm2(const Tile& p) {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  const double v = tile_projection_norm2(i_, p, f_, mode_);
  cache_.emplace(p, v);
  return v;
}

}  // namespace dyadic
