#include "dyadic/grid_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "dyadic/error.hpp"

namespace dyadic {

namespace {

// In-place 1D dyadic maximal of nonnegative values along a strided line.
void maximal_line(const double* in, std::size_t stride, int K, double* out, std::size_t out_stride,
                  std::vector<double>& avg) {
  const std::size_t n = std::size_t{1} << K;
  avg.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    avg[i] = std::abs(in[i * stride]);
    out[i * out_stride] = avg[i];
  }
  for (std::size_t width = 2; width <= n; width <<= 1) {
    // After this pass avg[b] is the mean of the width-wide block starting at b.
    for (std::size_t b = 0; b < n; b += width) avg[b] = 0.5 * (avg[b] + avg[b + width / 2]);
    for (std::size_t b = 0; b < n; b += width)
      for (std::size_t i = b; i < b + width; ++i)
        out[i * out_stride] = std::max(out[i * out_stride], avg[b]);
  }
}

void check_q(double q) {
  if (!(q > 1.0)) throw DyadicError("q-maximal needs q > 1");
}

}  // namespace

GridFunction1D dyadic_maximal(const GridFunction1D& f) {
  GridFunction1D out(f.resolution());
  std::vector<double> scratch;
  maximal_line(f.values().data(), 1, f.resolution(), out.values().data(), 1, scratch);
  return out;
}

GridFunction2D dyadic_average(const GridFunction2D& f, int level) {
  const int K = f.resolution();
  if (level < 0 || level > K) throw DyadicError("square level outside [0, K]");
  const std::size_t w = std::size_t{1} << (K - level);
  const std::size_t n = f.side();
  GridFunction2D out(K);
  for (std::size_t a = 0; a < n; a += w)
    for (std::size_t b = 0; b < n; b += w) {
      double s = 0;
      for (std::size_t i = a; i < a + w; ++i)
        for (std::size_t j = b; j < b + w; ++j) s += std::abs(f.at(i, j));
      s /= static_cast<double>(w * w);
      for (std::size_t i = a; i < a + w; ++i)
        for (std::size_t j = b; j < b + w; ++j) out.at(i, j) = s;
    }
  return out;
}

GridFunction2D dyadic_maximal(const GridFunction2D& f) {
  const int K = f.resolution();
  const std::size_t n = f.side();
  // Pyramid of block means, finest first.
  std::vector<double> cur(n * n);
  for (std::size_t i = 0; i < n * n; ++i) cur[i] = std::abs(f.values()[i]);
  GridFunction2D out(K, std::vector<double>(cur));
  std::size_t side = n;
  for (int level = K - 1; level >= 0; --level) {
    const std::size_t half = side / 2;
    std::vector<double> next(half * half);
    for (std::size_t a = 0; a < half; ++a)
      for (std::size_t b = 0; b < half; ++b)
        next[a * half + b] = 0.25 * (cur[(2 * a) * side + 2 * b] + cur[(2 * a + 1) * side + 2 * b] +
                                     cur[(2 * a) * side + 2 * b + 1] + cur[(2 * a + 1) * side + 2 * b + 1]);
    const std::size_t w = n / half;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        out.at(i, j) = std::max(out.at(i, j), next[(i / w) * half + j / w]);
    cur = std::move(next);
    side = half;
  }
  return out;
}

GridFunction1D q_maximal(const GridFunction1D& f, double q) {
  check_q(q);
  GridFunction1D g(f.resolution());
  for (std::size_t i = 0; i < f.size(); ++i) g[i] = std::pow(std::abs(f[i]), q);
  GridFunction1D m = dyadic_maximal(g);
  for (double& x : m.values()) x = std::pow(x, 1.0 / q);
  return m;
}

GridFunction2D q_maximal(const GridFunction2D& f, double q) {
  check_q(q);
  GridFunction2D g(f.resolution());
  for (std::size_t i = 0; i < f.size(); ++i) g.values()[i] = std::pow(std::abs(f.values()[i]), q);
  GridFunction2D m = dyadic_maximal(g);
  for (double& x : m.values()) x = std::pow(x, 1.0 / q);
  return m;
}

GridFunction2D directional_maximal(const GridFunction2D& f, Axis axis, double q) {
  if (q != 1.0) check_q(q);
  const int K = f.resolution();
  const std::size_t n = f.side();
  GridFunction2D src(K);
  for (std::size_t i = 0; i < f.size(); ++i)
    src.values()[i] = q == 1.0 ? std::abs(f.values()[i]) : std::pow(std::abs(f.values()[i]), q);
  GridFunction2D out(K);
  std::vector<double> scratch;
  for (std::size_t line = 0; line < n; ++line) {
    if (axis == Axis::First)
      maximal_line(src.values().data() + line, n, K, out.values().data() + line, n, scratch);
    else
      maximal_line(src.row(line), 1, K, out.row(line), 1, scratch);
  }
  if (q != 1.0)
    for (double& x : out.values()) x = std::pow(x, 1.0 / q);
  return out;
}

CellSet2D level_set(const GridFunction2D& f, double lambda) {
  CellSet2D s(f.resolution());
  for (std::size_t i = 0; i < f.side(); ++i)
    for (std::size_t j = 0; j < f.side(); ++j)
      if (f.at(i, j) > lambda) s.insert(i, j);
  return s;
}

CellSet2D level_set_at_least(const GridFunction2D& f, double lambda) {
  CellSet2D s(f.resolution());
  for (std::size_t i = 0; i < f.side(); ++i)
    for (std::size_t j = 0; j < f.side(); ++j)
      if (f.at(i, j) >= lambda) s.insert(i, j);
  return s;
}

std::vector<bool> level_set(const GridFunction1D& f, double lambda) {
  std::vector<bool> s(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) s[i] = f[i] > lambda;
  return s;
}

}  // namespace dyadic
