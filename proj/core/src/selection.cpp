#include "dyadic/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "dyadic/error.hpp"
#include "dyadic/numerics.hpp"
#include "dyadic/wavelets.hpp"

namespace dyadic {

namespace {

double threshold(const Bitile& p, int n) { return std::ldexp(p.area(), -2 * n) / 3.0; }

std::vector<Bitile> dedupe(const std::vector<Bitile>& pp) {
  std::vector<Bitile> v(pp);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Comparability structure of a fixed bitile collection.
struct Hierarchy {
  std::vector<Bitile> tiles;
  std::unordered_map<Bitile, std::size_t, BitileHash> id;
  // above[j][p]: ids q with p <= q, p != q and P^j <= q (omega_q inside omega_p^j).
  std::vector<std::vector<std::size_t>> above[2];
  // below[j][q]: the inverse relation.
  std::vector<std::vector<std::size_t>> below[2];

  static int slot(int j) { return j == 1 ? 0 : 1; }

  explicit Hierarchy(std::vector<Bitile> pp) : tiles(std::move(pp)) {
    for (std::size_t k = 0; k < tiles.size(); ++k) id.emplace(tiles[k], k);
    for (auto& v : above) v.resize(tiles.size());
    for (auto& v : below) v.resize(tiles.size());
    for (std::size_t k = 0; k < tiles.size(); ++k) {
      const Bitile& p = tiles[k];
      for (int l = p.level - 1; l >= 0; --l) {
        const int d = p.level - l;
        const std::uint64_t first = p.freq << d, count = std::uint64_t{1} << d;
        for (std::uint64_t f = first; f < first + count; ++f) {
          const Bitile q{l, p.i0 >> d, p.i2 >> d, f};
          auto it = id.find(q);
          if (it == id.end()) continue;
          // omega_q has scale l+1 inside omega_p (scale p.level+1); its position
          // in the left or right half of omega_p is bit d-1 of the offset.
          const int j = ((f - first) >> (d - 1)) == 0 ? 1 : -1;
          above[slot(j)][k].push_back(it->second);
          below[slot(j)][it->second].push_back(k);
        }
      }
    }
  }

  std::vector<std::size_t> all_above(std::size_t k) const {
    std::vector<std::size_t> v = above[0][k];
    v.insert(v.end(), above[1][k].begin(), above[1][k].end());
    return v;
  }
  std::vector<std::size_t> all_below(std::size_t k) const {
    std::vector<std::size_t> v = below[0][k];
    v.insert(v.end(), below[1][k].begin(), below[1][k].end());
    return v;
  }
};

bool selection_precedes(const Bitile& a, const Bitile& b, int j) {
  // j = -1: minimal left endpoint of omega; j = +1: maximal right endpoint.
  const u128 la = static_cast<u128>(a.freq) << (a.level + 1);
  const u128 lb = static_cast<u128>(b.freq) << (b.level + 1);
  const u128 ra = static_cast<u128>(a.freq + 1) << (a.level + 1);
  const u128 rb = static_cast<u128>(b.freq + 1) << (b.level + 1);
  if (j == -1 && la != lb) return la < lb;
  if (j == 1 && ra != rb) return ra > rb;
  if (a.level != b.level) return a.level > b.level;  // smaller time intervals first
  return std::tie(a.i0, a.i2, a.freq) < std::tie(b.i0, b.i2, b.freq);
}

Tree make_tree(const Hierarchy& h, std::size_t top, const std::vector<char>& alive) {
  Tree t;
  t.top = h.tiles[top];
  t.members.push_back(t.top);
  for (std::size_t k : h.all_below(top))
    if (alive[k]) t.members.push_back(h.tiles[k]);
  std::sort(t.members.begin(), t.members.end());
  return t;
}

double part_energy(const Tree& t, int j, TileNormCache& norms) {
  double s = 0;
  for (const Bitile& p : t.part(j)) s += norms.norm2(p.half(-j));
  return s;
}

std::vector<CountingRow> counting_rows(const std::vector<SelectionPhase>& phases, const BoxEnergy& energy,
                                       int K, int n) {
  std::vector<std::vector<double>> area(K);
  for (int l = 0; l < K; ++l) area[l].assign(std::size_t{1} << (2 * l), 0.0);
  for (const SelectionPhase& ph : phases)
    for (const Tree& t : ph.trees)
      for (int l = 0; l <= t.top.level; ++l) {
        const int d = t.top.level - l;
        area[l][((t.top.i0 >> d) << l) | (t.top.i2 >> d)] += t.top.area();
      }
  std::vector<CountingRow> rows;
  for (int l = 0; l < K; ++l)
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << l); ++a)
      for (std::uint64_t b = 0; b < (std::uint64_t{1} << l); ++b) {
        CountingRow r;
        r.level = l;
        r.j0 = a;
        r.j2 = b;
        r.tops_area = area[l][(a << l) | b];
        r.bound = 9.0 * std::ldexp(energy.energy(Box{l, a, b, {0, 0}}), 2 * n);
        rows.push_back(r);
      }
  return rows;
}

}  // namespace

BoxEnergy::BoxEnergy(int i, const GridFunction2D& f) : i_(i), k_(f.resolution()) {
  if (i < 0 || i > 2) throw DyadicError("function index must be 0, 1 or 2");
  const std::size_t n = f.side();
  prefix_.assign((n + 1) * (n + 1), 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      prefix_[(a + 1) * (n + 1) + b + 1] = f.at(a, b) * f.at(a, b) + prefix_[a * (n + 1) + b + 1] +
                                           prefix_[(a + 1) * (n + 1) + b] - prefix_[a * (n + 1) + b];
}

double BoxEnergy::energy(const Box& j) const {
  const auto [first, second] = projection_support(i_, j);
  const CellRange r = cells_of(first, k_), c = cells_of(second, k_);
  const std::size_t w = (std::size_t{1} << k_) + 1;
  const auto at = [&](std::uint64_t a, std::uint64_t b) { return prefix_[a * w + b]; };
  const double s = at(r.first + r.count, c.first + c.count) - at(r.first, c.first + c.count) -
                   at(r.first + r.count, c.first) + at(r.first, c.first);
  return std::ldexp(std::max(s, 0.0), -2 * k_);
}

double size(int i, const std::vector<Bitile>& pp, const GridFunction2D& f, const ProjectionMode& mode) {
  if (!is_convex(pp)) throw DyadicError("convexity violated");
  TileNormCache norms(i, f, mode);
  double best = 0;
  for (const Bitile& top : pp) {
    double e = 0;
    for (const Tile& t : disjoint_tiling(down_set(pp, top))) e += norms.norm2(t);
    best = std::max(best, std::sqrt(e / top.area()));
  }
  return best;
}

SelectionCertificate select_trees(int i, const std::vector<Bitile>& pp, const GridFunction2D& f,
                                  const ProjectionMode& mode, int n) {
  if (!is_convex(pp)) throw DyadicError("convexity violated");
  SelectionCertificate cert;
  cert.index = i;
  cert.n = n;
  cert.mode = mode;
  cert.input = dedupe(pp);
  const Hierarchy h(cert.input);
  const std::size_t m = h.tiles.size();
  TileNormCache norms(i, f, mode);
  std::vector<char> alive(m, 1);

  const auto remove_tree = [&](std::size_t top, SelectionPhase& phase) {
    Tree t = make_tree(h, top, alive);
    alive[top] = 0;
    for (std::size_t k : h.all_below(top)) alive[k] = 0;
    phase.trees.push_back(std::move(t));
  };

  // Phase 0: maximal bitiles with large projections.
  {
    SelectionPhase phase;
    phase.j = 0;
    std::vector<char> heavy(m, 0);
    for (std::size_t k = 0; k < m; ++k) heavy[k] = norms.bitile_norm2(h.tiles[k]) > threshold(h.tiles[k], n);
    for (std::size_t k = 0; k < m; ++k) {
      if (!heavy[k]) continue;
      bool maximal = true;
      for (std::size_t q : h.all_above(k)) maximal = maximal && !heavy[q];
      if (maximal && alive[k]) remove_tree(k, phase);
    }
    cert.phases.push_back(std::move(phase));
  }

  // Phases j = -1, +1: trees whose T_j part carries too much energy.
  for (int j : {-1, 1}) {
    SelectionPhase phase;
    phase.j = j;
    const int s = Hierarchy::slot(j);
    std::vector<double> w(m), score(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) w[k] = norms.norm2(h.tiles[k].half(-j));
    for (std::size_t k = 0; k < m; ++k)
      if (alive[k])
        for (std::size_t q : h.above[s][k])
          if (alive[q]) score[q] += w[k];
    for (;;) {
      std::size_t best = m;
      for (std::size_t k = 0; k < m; ++k) {
        if (!alive[k] || !(score[k] > threshold(h.tiles[k], n))) continue;
        if (best == m || selection_precedes(h.tiles[k], h.tiles[best], j)) best = k;
      }
      if (best == m) break;
      // Incremental scores drift; confirm with an exact recomputation.
      double exact = 0;
      for (std::size_t k : h.below[s][best])
        if (alive[k]) exact += w[k];
      if (!(exact > threshold(h.tiles[best], n))) {
        score[best] = exact;
        continue;
      }
      std::vector<std::size_t> removed{best};
      for (std::size_t k : h.all_below(best))
        if (alive[k]) removed.push_back(k);
      remove_tree(best, phase);
      for (std::size_t k : removed)
        for (std::size_t q : h.above[s][k])
          if (alive[q]) score[q] -= w[k];
    }
    cert.phases.push_back(std::move(phase));
  }

  for (std::size_t k = 0; k < m; ++k)
    if (alive[k]) cert.remainder.push_back(h.tiles[k]);
  cert.remainder_size = size(i, cert.remainder, f, mode);
  cert.counting = counting_rows(cert.phases, BoxEnergy(i, f), f.resolution(), n);
  return cert;
}

VerificationReport verify_certificate(const SelectionCertificate& cert, const GridFunction2D& f, int i, int n,
                                      const ProjectionMode& mode) {
  VerificationReport rep;
  const auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.failures.push_back(why);
  };
  rep.size_bound = std::ldexp(1.0, -n);
  if (cert.index != i || cert.n != n) fail("certificate was produced for a different index or level");

  // Partition of the input.
  const std::vector<Bitile> input = dedupe(cert.input);
  std::unordered_map<Bitile, int, BitileHash> seen;
  for (const Bitile& p : input) seen[p] = 0;
  const auto claim = [&](const Bitile& p) {
    auto it = seen.find(p);
    if (it == seen.end()) {
      fail("bitile outside the input");
      return;
    }
    if (++it->second > 1) fail("bitile assigned twice");
  };
  for (const Bitile& p : cert.remainder) claim(p);
  for (const SelectionPhase& ph : cert.phases)
    for (const Tree& t : ph.trees)
      for (const Bitile& p : t.members) claim(p);
  for (const auto& [p, c] : seen)
    if (c == 0) fail("input bitile not assigned");
  if (!is_convex(input)) fail("input is not convex");

  // Replay the removals.
  TileNormCache norms(i, f, mode);
  BitileSet current(input.begin(), input.end());
  for (const SelectionPhase& ph : cert.phases) {
    std::vector<Tile> halves;
    std::vector<Bitile> tops;
    for (const Tree& t : ph.trees) {
      const std::string why = validate_tree(t);
      if (!why.empty()) {
        fail(why);
        continue;
      }
      if (!current.count(t.top)) {
        fail("tree top not available when selected");
        continue;
      }
      std::vector<Bitile> expect = down_set(std::vector<Bitile>(current.begin(), current.end()), t.top);
      std::vector<Bitile> got = t.members;
      std::sort(expect.begin(), expect.end());
      std::sort(got.begin(), got.end());
      if (expect != got) fail("tree is not the down-set of its top");
      if (ph.j == 0) {
        if (!(norms.bitile_norm2(t.top) > threshold(t.top, n))) fail("phase-0 top below threshold");
        tops.push_back(t.top);
      } else {
        if (!(part_energy(t, ph.j, norms) > threshold(t.top, n))) fail("selected tree does not violate the bound");
        for (const Bitile& p : t.part(ph.j)) halves.push_back(p.half(-ph.j));
      }
      for (const Bitile& p : t.members) current.erase(p);
    }
    for (std::size_t a = 0; a < tops.size(); ++a)
      for (std::size_t b = a + 1; b < tops.size(); ++b)
        if (intersects(tops[a].box(), tops[b].box())) fail("phase-0 tops intersect");
    for (std::size_t a = 0; a < halves.size(); ++a)
      for (std::size_t b = a + 1; b < halves.size(); ++b)
        if (intersects(halves[a].box(), halves[b].box())) fail("selected half-tiles intersect");
  }
  std::vector<Bitile> rest(current.begin(), current.end());
  std::sort(rest.begin(), rest.end());
  std::vector<Bitile> rem = dedupe(cert.remainder);
  if (rest != rem) fail("remainder differs from the replayed removals");
  if (!is_convex(rem)) fail("remainder is not convex");

  // Size of the remainder, by the tiling route.
  rep.remainder_size = rem.empty() ? 0.0 : size(i, rem, f, mode);
  if (rep.remainder_size > rep.size_bound * (1 + 1e-12)) fail("remainder size exceeds 2^-n");

  // Per-tree bounds on the remainder, under both readings of the threshold.
  for (const Bitile& top : rem) {
    Tree t{top, down_set(rem, top)};
    for (int j : {-1, 1}) {
      const double e = part_energy(t, j, norms);
      const double lin = std::ldexp(top.area(), -2 * n) / 3.0;
      const double sq = std::ldexp(top.area() * top.area(), -2 * n) / 3.0;
      rep.max_tree_ratio_linear = std::max(rep.max_tree_ratio_linear, e / lin);
      rep.max_tree_ratio_squared = std::max(rep.max_tree_ratio_squared, e / sq);
    }
  }
  if (rep.max_tree_ratio_linear > 1 + 1e-12) fail("remaining tree violates the selection bound");

  // Counting bound for every dyadic test box.
  const std::vector<CountingRow> rows = counting_rows(cert.phases, BoxEnergy(i, f), f.resolution(), n);
  for (const CountingRow& r : rows) {
    if (r.tops_area > r.bound * (1 + 1e-12)) fail("counting bound violated");
    if (r.bound > 0) rep.max_counting_ratio = std::max(rep.max_counting_ratio, r.tops_area / r.bound);
    else if (r.tops_area > 0) rep.max_counting_ratio = std::numeric_limits<double>::infinity();
  }
  if (rows.size() != cert.counting.size()) {
    fail("counting table has the wrong number of rows");
  } else {
    for (std::size_t k = 0; k < rows.size(); ++k)
      if (relative_deviation(rows[k].tops_area, cert.counting[k].tops_area) > 1e-12 ||
          relative_deviation(rows[k].bound, cert.counting[k].bound) > 1e-12) {
        fail("counting table does not match the trees");
        break;
      }
  }
  return rep;
}

}  // namespace dyadic
