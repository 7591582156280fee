#pragma once

// Cell-constant functions on [0,1) and [0,1)^2 at resolution K, and cell sets.
//
// Cell m of a 1D grid is [m 2^-K, (m+1) 2^-K). A point of [0,1) at resolution
// K is identified with the K-bit integer m of its cell; Walsh addition of two
// points is then XOR of their integers.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dyadic {

constexpr int kMaxResolution1D = 20;
constexpr int kMaxResolution2D = 12;

void check_same_resolution(int a, int b);

class GridFunction1D {
 public:
  GridFunction1D() = default;
  explicit GridFunction1D(int resolution, double fill = 0.0);
  /// Throws unless values.size() == 2^resolution and every entry is finite.
  GridFunction1D(int resolution, std::vector<double> values);

  int resolution() const { return k_; }
  std::size_t size() const { return v_.size(); }
  double& operator[](std::size_t m) { return v_[m]; }
  double operator[](std::size_t m) const { return v_[m]; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  GridFunction1D& operator+=(const GridFunction1D& o);
  GridFunction1D& operator-=(const GridFunction1D& o);
  GridFunction1D& operator*=(double c);

 private:
  int k_ = 0;
  std::vector<double> v_ = std::vector<double>(1, 0.0);
};

/// Row-major 2^K x 2^K array; at(i, j) is the value at (first = i, second = j).
class GridFunction2D {
 public:
  GridFunction2D() = default;
  explicit GridFunction2D(int resolution, double fill = 0.0);
  GridFunction2D(int resolution, std::vector<double> values);

  int resolution() const { return k_; }
  std::size_t side() const { return n_; }
  std::size_t size() const { return v_.size(); }
  double& at(std::size_t i, std::size_t j) { return v_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return v_[i * n_ + j]; }
  const double* row(std::size_t i) const { return v_.data() + i * n_; }
  double* row(std::size_t i) { return v_.data() + i * n_; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

  GridFunction2D transposed() const;

  GridFunction2D& operator+=(const GridFunction2D& o);
  GridFunction2D& operator-=(const GridFunction2D& o);
  GridFunction2D& operator*=(double c);

 private:
  int k_ = 0;
  std::size_t n_ = 1;
  std::vector<double> v_ = std::vector<double>(1, 0.0);
};

GridFunction1D operator+(GridFunction1D a, const GridFunction1D& b);
GridFunction1D operator-(GridFunction1D a, const GridFunction1D& b);
GridFunction1D operator*(double c, GridFunction1D a);
GridFunction1D pointwise_product(const GridFunction1D& a, const GridFunction1D& b);
GridFunction2D operator+(GridFunction2D a, const GridFunction2D& b);
GridFunction2D operator-(GridFunction2D a, const GridFunction2D& b);
GridFunction2D operator*(double c, GridFunction2D a);
GridFunction2D pointwise_product(const GridFunction2D& a, const GridFunction2D& b);

double integral(const GridFunction1D& f);
double integral(const GridFunction2D& f);
/// (integral |f|^p)^(1/p); p = infinity gives the max norm.
double norm_p(const GridFunction1D& f, double p);
double norm_p(const GridFunction2D& f, double p);
double inner(const GridFunction1D& f, const GridFunction1D& g);
double inner(const GridFunction2D& f, const GridFunction2D& g);
double max_abs_diff(const GridFunction1D& f, const GridFunction1D& g);
double max_abs_diff(const GridFunction2D& f, const GridFunction2D& g);

/// A set of cells of a 2^K x 2^K grid.
class CellSet2D {
 public:
  CellSet2D() = default;
  explicit CellSet2D(int resolution);

  int resolution() const { return k_; }
  std::size_t side() const { return n_; }
  bool contains(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
  void insert(std::size_t i, std::size_t j) { bits_[i * n_ + j] = 1; }
  void erase(std::size_t i, std::size_t j) { bits_[i * n_ + j] = 0; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  /// Lebesgue measure: count * 2^-2K.
  double measure() const;
  GridFunction2D indicator() const;
  static CellSet2D from_indicator(const GridFunction2D& f);

  friend bool operator==(const CellSet2D&, const CellSet2D&) = default;

 private:
  int k_ = 0;
  std::size_t n_ = 1;
  std::vector<std::uint8_t> bits_ = std::vector<std::uint8_t>(1, 0);
};

CellSet2D set_union(const CellSet2D& a, const CellSet2D& b);
CellSet2D set_difference(const CellSet2D& a, const CellSet2D& b);
bool is_subset(const CellSet2D& a, const CellSet2D& b);

}  // namespace dyadic
