#include "dyadic/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dyadic/error.hpp"
#include "dyadic/numerics.hpp"

namespace dyadic {

namespace {

void check_resolution(int K, int max) {
  if (K < 0 || K > max)
    throw DyadicError("resolution " + std::to_string(K) + " outside [0, " + std::to_string(max) + "]");
}

void check_finite(const std::vector<double>& v) {
  for (double x : v)
    if (!std::isfinite(x)) throw DyadicError("grid function entries must be finite");
}

template <class V>
double lp_norm(const V& v, double p, double cell) {
  if (std::isinf(p)) {
    double m = 0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  if (!(p > 0)) throw DyadicError("norm exponent must be positive");
  CompensatedSum s;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s.value() * cell, 1.0 / p);
}

template <class V>
double sum_of(const V& v) {
  CompensatedSum s;
  for (double x : v) s += x;
  return s.value();
}

}  // namespace

void check_same_resolution(int a, int b) {
  if (a != b)
    throw DyadicError("resolution mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

GridFunction1D::GridFunction1D(int resolution, double fill) : k_(resolution) {
  check_resolution(resolution, kMaxResolution1D);
  v_.assign(std::size_t{1} << resolution, fill);
}

GridFunction1D::GridFunction1D(int resolution, std::vector<double> values)
    : k_(resolution), v_(std::move(values)) {
  check_resolution(resolution, kMaxResolution1D);
  if (v_.size() != (std::size_t{1} << resolution))
    throw DyadicError("grid function needs 2^K values");
  check_finite(v_);
}

GridFunction1D& GridFunction1D::operator+=(const GridFunction1D& o) {
  check_same_resolution(k_, o.k_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridFunction1D& GridFunction1D::operator-=(const GridFunction1D& o) {
  check_same_resolution(k_, o.k_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

GridFunction1D& GridFunction1D::operator*=(double c) {
  for (double& x : v_) x *= c;
  return *this;
}

GridFunction2D::GridFunction2D(int resolution, double fill)
    : k_(resolution), n_(std::size_t{1} << resolution) {
  check_resolution(resolution, kMaxResolution2D);
  v_.assign(n_ * n_, fill);
}

GridFunction2D::GridFunction2D(int resolution, std::vector<double> values)
    : k_(resolution), n_(std::size_t{1} << resolution), v_(std::move(values)) {
  check_resolution(resolution, kMaxResolution2D);
  if (v_.size() != n_ * n_) throw DyadicError("grid function needs 2^K x 2^K values");
  check_finite(v_);
}

GridFunction2D GridFunction2D::transposed() const {
  GridFunction2D t(k_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.at(j, i) = at(i, j);
  return t;
}

GridFunction2D& GridFunction2D::operator+=(const GridFunction2D& o) {
  check_same_resolution(k_, o.k_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
  return *this;
}

GridFunction2D& GridFunction2D::operator-=(const GridFunction2D& o) {
  check_same_resolution(k_, o.k_);
  for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
  return *this;
}

GridFunction2D& GridFunction2D::operator*=(double c) {
  for (double& x : v_) x *= c;
  return *this;
}

GridFunction1D operator+(GridFunction1D a, const GridFunction1D& b) { return a += b; }
GridFunction1D operator-(GridFunction1D a, const GridFunction1D& b) { return a -= b; }
GridFunction1D operator*(double c, GridFunction1D a) { return a *= c; }
GridFunction2D operator+(GridFunction2D a, const GridFunction2D& b) { return a += b; }
GridFunction2D operator-(GridFunction2D a, const GridFunction2D& b) { return a -= b; }
GridFunction2D operator*(double c, GridFunction2D a) { return a *= c; }

GridFunction1D pointwise_product(const GridFunction1D& a, const GridFunction1D& b) {
  check_same_resolution(a.resolution(), b.resolution());
  GridFunction1D r(a.resolution());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

GridFunction2D pointwise_product(const GridFunction2D& a, const GridFunction2D& b) {
  check_same_resolution(a.resolution(), b.resolution());
  GridFunction2D r(a.resolution());
  for (std::size_t i = 0; i < a.size(); ++i) r.values()[i] = a.values()[i] * b.values()[i];
  return r;
}

double integral(const GridFunction1D& f) { return std::ldexp(sum_of(f.values()), -f.resolution()); }
double integral(const GridFunction2D& f) { return std::ldexp(sum_of(f.values()), -2 * f.resolution()); }

double norm_p(const GridFunction1D& f, double p) {
  return lp_norm(f.values(), p, std::ldexp(1.0, -f.resolution()));
}
double norm_p(const GridFunction2D& f, double p) {
  return lp_norm(f.values(), p, std::ldexp(1.0, -2 * f.resolution()));
}

double inner(const GridFunction1D& f, const GridFunction1D& g) {
  check_same_resolution(f.resolution(), g.resolution());
  CompensatedSum s;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * g[i];
  return std::ldexp(s.value(), -f.resolution());
}

double inner(const GridFunction2D& f, const GridFunction2D& g) {
  check_same_resolution(f.resolution(), g.resolution());
  CompensatedSum s;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.values()[i] * g.values()[i];
  return std::ldexp(s.value(), -2 * f.resolution());
}

double max_abs_diff(const GridFunction1D& f, const GridFunction1D& g) {
  check_same_resolution(f.resolution(), g.resolution());
  double m = 0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

double max_abs_diff(const GridFunction2D& f, const GridFunction2D& g) {
  check_same_resolution(f.resolution(), g.resolution());
  double m = 0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.values()[i] - g.values()[i]));
  return m;
}

CellSet2D::CellSet2D(int resolution) : k_(resolution), n_(std::size_t{1} << resolution) {
  check_resolution(resolution, kMaxResolution2D);
  bits_.assign(n_ * n_, 0);
}

std::size_t CellSet2D::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double CellSet2D::measure() const { return std::ldexp(static_cast<double>(count()), -2 * k_); }

GridFunction2D CellSet2D::indicator() const {
  GridFunction2D f(k_);
  for (std::size_t i = 0; i < bits_.size(); ++i) f.values()[i] = bits_[i];
  return f;
}

CellSet2D CellSet2D::from_indicator(const GridFunction2D& f) {
  CellSet2D s(f.resolution());
  for (std::size_t i = 0; i < f.size(); ++i) s.bits_[i] = f.values()[i] != 0 ? 1 : 0;
  return s;
}

CellSet2D set_union(const CellSet2D& a, const CellSet2D& b) {
  check_same_resolution(a.resolution(), b.resolution());
  CellSet2D r = a;
  for (std::size_t i = 0; i < a.side(); ++i)
    for (std::size_t j = 0; j < a.side(); ++j)
      if (b.contains(i, j)) r.insert(i, j);
  return r;
}

CellSet2D set_difference(const CellSet2D& a, const CellSet2D& b) {
  check_same_resolution(a.resolution(), b.resolution());
  CellSet2D r = a;
  for (std::size_t i = 0; i < a.side(); ++i)
    for (std::size_t j = 0; j < a.side(); ++j)
      if (b.contains(i, j)) r.erase(i, j);
  return r;
}

bool is_subset(const CellSet2D& a, const CellSet2D& b) {
  check_same_resolution(a.resolution(), b.resolution());
  for (std::size_t i = 0; i < a.side(); ++i)
    for (std::size_t j = 0; j < a.side(); ++j)
      if (a.contains(i, j) && !b.contains(i, j)) return false;
  return true;
}

}  // namespace dyadic
