#include "dyadic/random.hpp"

#include <algorithm>
#include <numeric>

#include "dyadic/error.hpp"

namespace dyadic {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DyadicError("Rng::below needs n > 0");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = gen_();
  while (x >= limit) x = gen_();
  return x % n;
}

GridFunction1D Rng::uniform_function_1d(int K, double lo, double hi) {
  GridFunction1D f(K);
  for (auto& x : f.values()) x = uniform(lo, hi);
  return f;
}

GridFunction2D Rng::uniform_function_2d(int K, double lo, double hi) {
  GridFunction2D f(K);
  for (auto& x : f.values()) x = uniform(lo, hi);
  return f;
}

CellSet2D Rng::random_cells(int K, std::size_t cells) {
  CellSet2D s(K);
  const std::size_t total = s.side() * s.side();
  if (cells > total) throw DyadicError("more cells requested than the grid has");
  // Partial Fisher-Yates.
  std::vector<std::size_t> idx(total);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < cells; ++i) {
    const std::size_t j = i + below(total - i);
    std::swap(idx[i], idx[j]);
    s.insert(idx[i] / s.side(), idx[i] % s.side());
  }
  return s;
}

CellSet2D Rng::random_dyadic_squares(int K, int level, std::size_t squares) {
  if (level < 0 || level > K) throw DyadicError("square level outside [0, K]");
  const std::size_t side = std::size_t{1} << level;
  const std::size_t width = std::size_t{1} << (K - level);
  const CellSet2D coarse = random_cells(level, std::min(squares, side * side));
  CellSet2D s(K);
  for (std::size_t a = 0; a < side; ++a)
    for (std::size_t b = 0; b < side; ++b)
      if (coarse.contains(a, b))
        for (std::size_t i = 0; i < width; ++i)
          for (std::size_t j = 0; j < width; ++j) s.insert(a * width + i, b * width + j);
  return s;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace dyadic
