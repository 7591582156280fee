#include "dyadic/triform.hpp"

#include <cmath>
#include <string>

#include "dyadic/error.hpp"
#include "dyadic/numerics.hpp"
#include "dyadic/selection.hpp"
#include "dyadic/wavelets.hpp"

namespace dyadic {

namespace {

void check_eps_value(double v) {
  if (!(std::abs(v) <= 1.0)) throw DyadicError("coefficient magnitude must be at most 1");
}

void check_level(int level, int K) {
  if (level < 0 || level >= K) throw DyadicError("level outside [0, K-1]");
}

int require_common_resolution(const GridFunction2D& a, const GridFunction2D& b, const GridFunction2D& c) {
  check_same_resolution(a.resolution(), b.resolution());
  check_same_resolution(a.resolution(), c.resolution());
  return a.resolution();
}

// Local unnormalized Walsh coefficients on I: out[q] = integral over I of f w_q-local.
std::vector<double> local_walsh_integrals(const GridFunction1D& f, const DyadicInterval& I) {
  const int K = f.resolution();
  const CellRange r = cells_of(I, K);
  const int bits = K + I.scale;
  std::vector<double> v(r.count);
  for (std::uint64_t u = 0; u < r.count; ++u) v[bit_reverse(u, bits)] = f[r.first + u];
  hadamard_inplace(v);
  for (double& x : v) x = std::ldexp(x, -K);
  return v;
}

}  // namespace

EpsilonField::EpsilonField(int K) : k_(K) {
  if (K < 1 || K > kMaxResolution2D) throw DyadicError("resolution too small for bitiles");
  for (int j = 0; j < K; ++j) eps_.emplace_back(std::size_t{1} << (2 * j), 0.0);
}

double EpsilonField::get(int level, std::uint64_t i0, std::uint64_t i2) const {
  return eps_.at(level).at((i0 << level) | i2);
}

void EpsilonField::set(int level, std::uint64_t i0, std::uint64_t i2, double v) {
  check_level(level, k_);
  check_eps_value(v);
  const std::uint64_t n = std::uint64_t{1} << level;
  if (i0 >= n || i2 >= n) throw DyadicError("triple is not localized to [0,1)");
  eps_[level][(i0 << level) | i2] = v;
}

EpsilonField EpsilonField::constant(int K, double v, int min_level, int max_level) {
  check_eps_value(v);
  EpsilonField e(K);
  for (int j = std::max(0, min_level); j <= std::min(K - 1, max_level); ++j)
    std::fill(e.eps_[j].begin(), e.eps_[j].end(), v);
  return e;
}

EpsilonField EpsilonField::random(int K, Rng& rng) {
  EpsilonField e(K);
  for (auto& level : e.eps_)
    for (double& x : level) x = rng.uniform(-1.0, 1.0);
  return e;
}

HaarField::HaarField(int K) : k_(K) {
  if (K < 1 || K > kMaxResolution1D) throw DyadicError("resolution too small for Haar functions");
  for (int j = 0; j < K; ++j) eps_.emplace_back(std::size_t{1} << j, 0.0);
}

void HaarField::set(int level, std::uint64_t index, double v) {
  check_level(level, k_);
  check_eps_value(v);
  eps_[level].at(index) = v;
}

HaarField HaarField::constant(int K, double v) {
  check_eps_value(v);
  HaarField e(K);
  for (auto& level : e.eps_) std::fill(level.begin(), level.end(), v);
  return e;
}

HaarField HaarField::random(int K, Rng& rng) {
  HaarField e(K);
  for (auto& level : e.eps_)
    for (double& x : level) x = rng.uniform(-1.0, 1.0);
  return e;
}

EpsilonField lift_by_first(const HaarField& e) {
  const int K = e.resolution();
  EpsilonField out(K);
  for (int j = 0; j < K; ++j)
    for (std::uint64_t i0 = 0; i0 < (std::uint64_t{1} << j); ++i0)
      for (std::uint64_t i2 = 0; i2 < (std::uint64_t{1} << j); ++i2) out.set(j, i0, i2, e.get(j, i0));
  return out;
}

EpsilonField lift_bht(const HaarField& e, int L) {
  if (L < 1) throw DyadicError("L must be a positive integer");
  const int K = e.resolution();
  EpsilonField out(K);
  for (int j = 0; j < K; ++j)
    for (std::uint64_t i0 = 0; i0 < (std::uint64_t{1} << j); ++i0)
      for (std::uint64_t i2 = 0; i2 < (std::uint64_t{1} << j); ++i2)
        out.set(j, i0, i2, e.get(j, i0 ^ (L >= 64 ? 0 : i2 >> L)));
  return out;
}

double scale_kernel(const EpsilonField& eps, std::uint64_t m0, std::uint64_t m1, std::uint64_t m2) {
  const int K = eps.resolution();
  const std::uint64_t s = m0 ^ m1 ^ m2;
  double k = 0;
  for (int j = 0; j < K; ++j) {
    if ((s >> (K - j)) != 0) continue;
    const double e = eps.get(j, m0 >> (K - j), m2 >> (K - j));
    const double r = ((s >> (K - j - 1)) & 1) ? -1.0 : 1.0;
    k += std::ldexp(e * r, j);
  }
  return k;
}

double telescoped_kernel(int K, int m, std::uint64_t s) {
  const int depth = -m;
  if (depth < 0 || depth > K) throw DyadicError("truncation depth outside [-K, 0]");
  const double top = (s >> (K - depth)) == 0 ? std::ldexp(1.0, depth) : 0.0;
  return top - ((s >> K) == 0 ? 1.0 : 0.0);
}

double lambda_direct(const GridFunction2D& f0, const GridFunction2D& f1, const GridFunction2D& f2,
                     const EpsilonField& eps) {
  const int K = require_common_resolution(f0, f1, f2);
  check_same_resolution(K, eps.resolution());
  const std::size_t n = f0.side();
  const GridFunction2D g0 = f0.transposed();  // g0(x2, x1)
  std::vector<double> buf(n);
  CompensatedSum total;
  for (std::uint64_t m0 = 0; m0 < n; ++m0) {
    const double* row2 = f2.row(m0);
    for (std::uint64_t m2 = 0; m2 < n; ++m2) {
      const double w1 = f1.at(m2, m0);
      if (w1 == 0.0) continue;
      const double* row0 = g0.row(m2);
      for (std::size_t m1 = 0; m1 < n; ++m1) buf[m1] = row0[m1] * row2[m1];
      const std::uint64_t x = m0 ^ m2;
      double kern = 0;
      std::size_t len = n;
      // Blocks of size 2^t; the pair (2c, 2c+1) of them forms the level
      // K-1-t interval that x1 must share with x0 + x2.
      for (int t = 0; t < K; ++t) {
        const std::uint64_t c = x >> (t + 1);
        const double diff = buf[2 * c] - buf[2 * c + 1];
        const int j = K - 1 - t;
        const double e = eps.get(j, m0 >> (t + 1), m2 >> (t + 1));
        if (e != 0.0) kern += std::ldexp(((x >> t) & 1) ? -e * diff : e * diff, j);
        len /= 2;
        for (std::size_t b = 0; b < len; ++b) buf[b] = buf[2 * b] + buf[2 * b + 1];
      }
      total += w1 * kern;
    }
  }
  return std::ldexp(total.value(), -3 * K);
}

double lambda_bitile(const Bitile& p, const GridFunction2D& f0, const GridFunction2D& f1,
                     const GridFunction2D& f2) {
  const int K = require_common_resolution(f0, f1, f2);
  check_bitile(p, K);
  const CellRange r0 = cells_of(p.I0(), K);
  const CellRange r2 = cells_of(p.I2(), K);
  const std::uint64_t i1 = p.i0 ^ p.i2;
  std::vector<double> col(f0.side());
  std::vector<double> a(r2.count), b(r0.count);
  double total = 0;
  for (int jj : {1, -1}) {
    const DyadicInterval half{-(p.level + 1), 2 * i1 + (jj == 1 ? 0 : 1)};
    for (std::uint64_t u = 0; u < r2.count; ++u) {
      const std::uint64_t x2 = r2.first + u;
      for (std::size_t x1 = 0; x1 < f0.side(); ++x1) col[x1] = f0.at(x1, x2);
      a[u] = packet_inner(col, K, half, p.freq) * (u < r2.count / 2 ? 1.0 : -1.0);
    }
    for (std::uint64_t u = 0; u < r0.count; ++u) {
      const std::uint64_t x0 = r0.first + u;
      b[u] = packet_inner(std::span<const double>(f2.row(x0), f2.side()), K, half, p.freq) *
             (u < r0.count / 2 ? 1.0 : -1.0);
    }
    double s = 0;
    for (std::uint64_t u = 0; u < r2.count; ++u) {
      if (a[u] == 0.0) continue;
      const double* row1 = f1.row(r2.first + u);
      double inner_sum = 0;
      for (std::uint64_t v = 0; v < r0.count; ++v) inner_sum += row1[r0.first + v] * b[v];
      s += a[u] * inner_sum;
    }
    total += jj * s;
  }
  return std::ldexp(total, p.level - 2 * K);
}

double lambda_collection(const std::vector<Bitile>& pp, const GridFunction2D& f0, const GridFunction2D& f1,
                         const GridFunction2D& f2, const EpsilonField& eps) {
  check_same_resolution(f0.resolution(), eps.resolution());
  CompensatedSum s;
  for (const Bitile& p : pp) {
    const double e = eps.get(p.level, p.i0, p.i2);
    if (e != 0.0) s += e * lambda_bitile(p, f0, f1, f2);
  }
  return s.value();
}

double lambda_bitile_sum(const GridFunction2D& f0, const GridFunction2D& f1, const GridFunction2D& f2,
                         const EpsilonField& eps) {
  return lambda_collection(all_bitiles(f0.resolution()), f0, f1, f2, eps);
}

TreeReport lambda_tree(const Tree& t, const GridFunction2D& f0, const GridFunction2D& f1,
                       const GridFunction2D& f2, const EpsilonField& eps, const ProjectionMode& mode) {
  const std::string why = validate_tree(t);
  if (!why.empty()) throw DyadicError(why);
  TreeReport r;
  r.value = lambda_collection(t.members, f0, f1, f2, eps);
  r.top_area = t.top.area();
  const GridFunction2D* fs[3] = {&f0, &f1, &f2};
  for (int i = 0; i < 3; ++i) r.sizes[i] = size(i, t.members, *fs[i], mode);
  r.bound = r.top_area * r.sizes[0] * r.sizes[1] * r.sizes[2];
  r.ratio = r.bound > 0 ? std::abs(r.value) / r.bound : 0.0;
  return r;
}

GridFunction1D haar_multiplier(const HaarField& eps, const GridFunction1D& f) {
  const int K = f.resolution();
  check_same_resolution(K, eps.resolution());
  GridFunction1D out(K);
  for (int j = 0; j < K; ++j) {
    const std::uint64_t w = std::uint64_t{1} << (K - j);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << j); ++i) {
      const double e = eps.get(j, i);
      if (e == 0.0) continue;
      double c = 0;  // 2^K <f, h_I>
      for (std::uint64_t u = 0; u < w; ++u) c += u < w / 2 ? f[i * w + u] : -f[i * w + u];
      const double coef = std::ldexp(e * c, j - K);
      for (std::uint64_t u = 0; u < w; ++u) out[i * w + u] += u < w / 2 ? coef : -coef;
    }
  }
  return out;
}

GridFunction1D max_mod_haar(const HaarField& eps, const std::vector<std::uint64_t>& n, const GridFunction1D& f) {
  const int K = f.resolution();
  check_same_resolution(K, eps.resolution());
  if (n.size() != f.size()) throw DyadicError("choice function needs 2^K entries");
  GridFunction1D out(K);
  std::vector<double> g(f.size());
  for (std::uint64_t x = 0; x < f.size(); ++x) {
    const std::uint64_t N = n[x];
    if ((N >> K) != 0) throw DyadicError("frequency beyond resolution");
    for (std::uint64_t y = 0; y < f.size(); ++y) g[y] = walsh_sign(N, y, K) * f[y];
    double val = 0;
    for (int j = 0; j < K; ++j) {
      const double e = eps.get(j, x >> (K - j));
      if (e == 0.0) continue;
      const std::uint64_t w = std::uint64_t{1} << (K - j);
      const std::uint64_t start = (x >> (K - j)) << (K - j);
      double c = 0;
      for (std::uint64_t u = 0; u < w; ++u) c += u < w / 2 ? g[start + u] : -g[start + u];
      const double hx = (x - start) < w / 2 ? 1.0 : -1.0;
      val += std::ldexp(e * c * hx, j - K);
    }
    out[x] = walsh_sign(N, x, K) * val;
  }
  return out;
}

MaxModSubstitution max_mod_substitution(const GridFunction1D& f, const GridFunction1D& g,
                                        const std::vector<std::uint64_t>& n) {
  const int K = f.resolution();
  check_same_resolution(K, g.resolution());
  if (n.size() != f.size()) throw DyadicError("choice function needs 2^K entries");
  MaxModSubstitution s{GridFunction2D(K), GridFunction2D(K), GridFunction2D(K)};
  const std::size_t side = f.size();
  for (std::uint64_t a = 0; a < side; ++a)
    for (std::uint64_t b = 0; b < side; ++b) s.f0.at(a, b) = f[a ^ b];
  for (std::uint64_t x0 = 0; x0 < side; ++x0) {
    if ((n[x0] >> K) != 0) throw DyadicError("frequency beyond resolution");
    const double root = std::sqrt(std::abs(g[x0]));
    const double sgn = g[x0] > 0 ? 1.0 : g[x0] < 0 ? -1.0 : 0.0;
    for (std::uint64_t x = 0; x < side; ++x) {
      s.f1.at(x, x0) = sgn * root * walsh_sign(n[x0], x, K);        // F1(x2, x0)
      s.f2.at(x0, x) = root * walsh_sign(n[x0], x ^ x0, K);         // F2(x0, x1)
    }
  }
  return s;
}

BhtValues bht_form(const HaarField& eps, int L, const GridFunction1D& f, const GridFunction1D& g,
                   const GridFunction1D& h) {
  if (L < 1) throw DyadicError("L must be a positive integer");
  const int K = f.resolution();
  check_same_resolution(K, g.resolution());
  check_same_resolution(K, h.resolution());
  check_same_resolution(K, eps.resolution());
  if (L > 40) throw DyadicError("L too large for the frequency window");
  BhtValues out;
  CompensatedSum by_proj, by_coef;
  for (int j = 0; j < K; ++j) {
    const std::uint64_t count = std::uint64_t{1} << (K - j);  // local frequencies
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << j); ++i) {
      const double e = eps.get(j, i);
      if (e == 0.0) continue;
      const DyadicInterval I{-j, i};

      // (b) coefficient sum with <f, 1_I w_{q 2^j}>.
      const std::vector<double> cf = local_walsh_integrals(f, I);
      const std::vector<double> cg = local_walsh_integrals(g, I);
      const std::vector<double> ch = local_walsh_integrals(h, I);
      double sb = 0;
      for (std::uint64_t m = 0; (m << L) < count; ++m)
        for (std::uint64_t nn = 0; nn < (std::uint64_t{1} << L); ++nn) {
          const std::uint64_t q0 = m ^ 1, q1 = (m << L) ^ nn, q2 = (m << L) ^ nn ^ m ^ 1;
          if (q0 >= count || q1 >= count || q2 >= count) continue;
          sb += cf[q0] * cg[q1] * ch[q2];
        }
      by_coef += std::ldexp(e * sb, 2 * j);

      // (a) integral of the product of three projections, per frequency cell omega.
      const CellRange r = cells_of(I, K);
      std::vector<double> pf(f.size()), pg(f.size()), ph(f.size());
      for (std::uint64_t m = 0; m < count; ++m) {
        if ((m << L) >= count) break;  // Pi_{I x 2^L omega} g = 0 beyond the window
        std::fill(pf.begin(), pf.end(), 0.0);
        std::fill(pg.begin(), pg.end(), 0.0);
        std::fill(ph.begin(), ph.end(), 0.0);
        const std::uint64_t qf = m ^ 1;
        if (qf < count) add_packet(pf, K, I, qf, packet_inner(f.values(), K, I, qf));
        const std::uint64_t gblock = m << L;
        const std::uint64_t hblock = ((m << L) ^ m ^ 1) >> L << L;
        for (std::uint64_t nn = 0; nn < (std::uint64_t{1} << L); ++nn) {
          if (gblock + nn < count) add_packet(pg, K, I, gblock + nn, packet_inner(g.values(), K, I, gblock + nn));
          if (hblock + nn < count) add_packet(ph, K, I, hblock + nn, packet_inner(h.values(), K, I, hblock + nn));
        }
        double s = 0;
        for (std::uint64_t u = r.first; u < r.first + r.count; ++u) s += pf[u] * pg[u] * ph[u];
        by_proj += e * std::ldexp(s, -K);
      }
    }
  }
  out.projections = by_proj.value();
  out.coefficients = by_coef.value();
  return out;
}

BhtSubstitution bht_substitution(const GridFunction1D& f, const GridFunction1D& g, const GridFunction1D& h,
                                 int L) {
  if (L < 1) throw DyadicError("L must be a positive integer");
  const int K = f.resolution();
  check_same_resolution(K, g.resolution());
  check_same_resolution(K, h.resolution());
  const auto sh = [L](std::uint64_t x) { return L >= 64 ? std::uint64_t{0} : x >> L; };
  BhtSubstitution s{GridFunction2D(K), GridFunction2D(K), GridFunction2D(K)};
  const std::size_t n = f.size();
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      s.f0.at(a, b) = f[a ^ b ^ sh(b)];        // F0(x1, x2)
      s.f1.at(a, b) = h[sh(a) ^ b];            // F1(x2, x0)
      s.f2.at(a, b) = g[a ^ sh(a) ^ sh(b)];    // F2(x0, x1)
    }
  return s;
}

double endpoint_identity_check(const HaarField& eps, const GridFunction1D& f, const GridFunction1D& g,
                               const GridFunction1D& h) {
  const int K = f.resolution();
  check_same_resolution(K, g.resolution());
  check_same_resolution(K, h.resolution());
  GridFunction2D f0(K), f1(K), f2(K);
  const std::size_t n = f.size();
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      f0.at(a, b) = f[a ^ b];
      f1.at(a, b) = h[b];  // F1(x2, x0) = h(x0)
      f2.at(a, b) = g[a];  // F2(x0, x1) = g(x0)
    }
  const double lhs = lambda_direct(f0, f1, f2, lift_by_first(eps));
  const double rhs = inner(f, haar_multiplier(eps, pointwise_product(g, h)));
  return std::abs(lhs - rhs);
}

}  // namespace dyadic
