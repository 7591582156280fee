#pragma once

// Tiles, bitiles, the tile order, convex collections, trees, disjoint tilings
// and the time-frequency projections Pi^(i).
//
// All boxes are localized: I0, I2 (and I1 = I0 + I2) are dyadic subintervals of
// [0,1). A box of time level j has |I0| = |I2| = 2^-j; I0 and I2 are stored by
// their indices at that level, and I1 has index i0 ^ i2.
//
// Two-variable functions are stored with the first index equal to the first
// argument: F0(x1, x2), F1(x2, x0), F2(x0, x1).

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/walsh.hpp"

namespace dyadic {

/// A dyadic box I0 x I2 x omega with |I0| = |I2| = 2^-level; the frequency
/// interval is arbitrary (tiles and bitiles are special cases).
struct Box {
  int level = 0;
  std::uint64_t i0 = 0;
  std::uint64_t i2 = 0;
  DyadicInterval omega;

  DyadicInterval I0() const { return {-level, i0}; }
  DyadicInterval I1() const { return {-level, i0 ^ i2}; }
  DyadicInterval I2() const { return {-level, i2}; }

  friend bool operator==(const Box&, const Box&) = default;
};

/// P <= P': I_i contained in I_i' for every i and omega containing omega'.
bool le(const Box& p, const Box& pp);
/// Boxes intersect (as subsets of time x time x frequency space).
bool intersects(const Box& p, const Box& pp);

/// |I0| = |I2| = |omega|^-1 = 2^-level; omega = [freq 2^level, (freq+1) 2^level).
struct Tile {
  int level = 0;
  std::uint64_t i0 = 0;
  std::uint64_t i2 = 0;
  std::uint64_t freq = 0;

  DyadicInterval I0() const { return {-level, i0}; }
  DyadicInterval I1() const { return {-level, i0 ^ i2}; }
  DyadicInterval I2() const { return {-level, i2}; }
  DyadicInterval omega() const { return {level, freq}; }
  Box box() const { return {level, i0, i2, omega()}; }

  friend bool operator==(const Tile&, const Tile&) = default;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

/// |I0| = |I2| = 2 |omega|^-1 = 2^-level; omega = [freq 2^(level+1), ...).
struct Bitile {
  int level = 0;
  std::uint64_t i0 = 0;
  std::uint64_t i2 = 0;
  std::uint64_t freq = 0;

  DyadicInterval I0() const { return {-level, i0}; }
  DyadicInterval I1() const { return {-level, i0 ^ i2}; }
  DyadicInterval I2() const { return {-level, i2}; }
  DyadicInterval omega() const { return {level + 1, freq}; }
  Box box() const { return {level, i0, i2, omega()}; }
  /// |I0| |I2|.
  double area() const;

  /// P^j = I0 x I2 x omega^j; omega^{+1} is the left half, omega^{-1} the right.
  Tile half(int j) const;
  /// The four tiles I0^a x I2^b x omega (time halves).
  std::vector<Tile> time_split() const;
  /// The bitile one level up whose frequency interval is omega^j.
  Bitile parent(int j) const;

  friend bool operator==(const Bitile&, const Bitile&) = default;
  friend auto operator<=>(const Bitile&, const Bitile&) = default;
};

inline bool le(const Bitile& p, const Bitile& pp) { return le(p.box(), pp.box()); }
inline bool le(const Tile& p, const Tile& pp) { return le(p.box(), pp.box()); }

struct BitileHash {
  std::size_t operator()(const Bitile& p) const;
};
struct TileHash {
  std::size_t operator()(const Tile& p) const;
};
using BitileSet = std::unordered_set<Bitile, BitileHash>;

/// All bitiles at resolution K: levels 0..K-1, frequencies below 2^K.
std::vector<Bitile> all_bitiles(int K);
/// Throws unless P is a bitile representable at resolution K.
void check_bitile(const Bitile& p, int K);

/// Convexity by the chain criterion: for every pair P < P'' the bitile one
/// level above P on the unique chain towards P'' is present.
bool is_convex(const std::vector<Bitile>& pp);
/// Smallest convex collection containing pp.
std::vector<Bitile> convex_hull(const std::vector<Bitile>& pp);
/// {P in pp : P <= top}.
std::vector<Bitile> down_set(const std::vector<Bitile>& pp, const Bitile& top);

/// Disjoint tiles whose union is the union of the (convex) collection.
/// Bitiles are taken from the coarsest level down; a half-tile P^j is added
/// unless the bitile P.parent(j), which contains it, is in the collection.
std::vector<Tile> disjoint_tiling(const std::vector<Bitile>& pp);

struct Tree {
  Bitile top;
  std::vector<Bitile> members;

  /// T_j = {P in T : P^j <= top}.
  std::vector<Bitile> part(int j) const;
};
/// Empty string when valid, otherwise the violated condition.
std::string validate_tree(const Tree& t);

class ProjectionMode {
 public:
  enum class Kind { None, Diagonal, Fiberwise };

  ProjectionMode() = default;
  /// F0(x1, x2) = f(x1 + a (*) x2); requires |a| >= 1.
  static ProjectionMode diagonal(const WalshNumber& a);
  /// F0(x1, x2) = f(x2) e(N(x2) (*) x1), N given per cell of x2.
  static ProjectionMode fiberwise(std::vector<WalshNumber> n);

  Kind kind() const { return kind_; }
  const WalshNumber& a() const { return a_; }
  const std::vector<WalshNumber>& n() const { return n_; }

 private:
  Kind kind_ = Kind::None;
  WalshNumber a_;
  std::vector<WalshNumber> n_;
};

/// Pi_p^(i) F for a tile p, added into `out`.
void add_tile_projection(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode,
                         GridFunction2D& out);
GridFunction2D proj_tile(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode);
/// ||Pi_p^(i) F||_2^2.
double tile_projection_norm2(int i, const Tile& p, const GridFunction2D& f, const ProjectionMode& mode);

/// Pi_P^(i) F through the upper/lower split of P.
GridFunction2D proj_bitile(int i, const Bitile& p, const GridFunction2D& f, const ProjectionMode& mode);
/// Pi_P^(i) F through the four time-split tiles of P.
GridFunction2D proj_bitile_time_split(int i, const Bitile& p, const GridFunction2D& f,
                                      const ProjectionMode& mode);
/// Sum of tile projections over disjoint_tiling(pp).
GridFunction2D proj_collection(int i, const std::vector<Bitile>& pp, const GridFunction2D& f,
                               const ProjectionMode& mode);

/// Support box of Pi^(i) in stored coordinates: (first, second) intervals.
std::pair<DyadicInterval, DyadicInterval> projection_support(int i, const Box& p);

/// F0 for the diagonal case: F0(x1, x2) = f(x1 + a (*) x2) with f a grid
/// function of 2^K cells on [0, 2^hi(a)).
GridFunction2D diagonal_function(const GridFunction1D& f, const WalshNumber& a);
/// F0 for fiberwise characters: F0(x1, x2) = f(x2) w_{N(x2)}(x1).
GridFunction2D fiberwise_function(const GridFunction1D& f, const std::vector<std::uint64_t>& n);

/// Caches ||Pi^(i)_p F||^2 per tile for repeated size and selection queries.
class TileNormCache {
 public:
  TileNormCache(int i, const GridFunction2D& f, const ProjectionMode& mode);
  double norm2(const Tile& p);
  double bitile_norm2(const Bitile& p) { return norm2(p.half(1)) + norm2(p.half(-1)); }

 private:
  int i_;
  const GridFunction2D& f_;
  ProjectionMode mode_;
  std::unordered_map<Tile, double, TileHash> cache_;
};

}  // namespace dyadic
