#pragma once

// The dyadic triangular Hilbert form
//
//   Lambda(F0, F1, F2) = sum over triples I = (I0, I1, I2), I1 = I0 + I2, of
//     eps_I |I0|^-1 iiint h_I1(x1) F0(x1,x2) h_I2(x2) F1(x2,x0) h_I0(x0) F2(x0,x1),
//
// its bitile decomposition, tree forms, and the one-dimensional forms that
// arise from special choices of F0, F1, F2.

#include <cstdint>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/random.hpp"
#include "dyadic/tiles.hpp"

namespace dyadic {

/// Coefficients eps on triples of level j in {0, ..., K-1} (|I| = 2^-j),
/// indexed by (i0, i2); the middle interval is I1 = I0 + I2.
class EpsilonField {
 public:
  explicit EpsilonField(int K);

  int resolution() const { return k_; }
  double get(int level, std::uint64_t i0, std::uint64_t i2) const;
  void set(int level, std::uint64_t i0, std::uint64_t i2, double v);
  const std::vector<double>& level_values(int level) const { return eps_.at(level); }

  /// eps = v on levels [min_level, max_level], zero elsewhere.
  static EpsilonField constant(int K, double v, int min_level, int max_level);
  static EpsilonField random(int K, Rng& rng);

 private:
  int k_;
  std::vector<std::vector<double>> eps_;
};

/// Coefficients on dyadic intervals of [0,1) of level 0..K-1.
class HaarField {
 public:
  explicit HaarField(int K);

  int resolution() const { return k_; }
  double get(int level, std::uint64_t index) const { return eps_.at(level).at(index); }
  void set(int level, std::uint64_t index, double v);

  static HaarField constant(int K, double v);
  static HaarField random(int K, Rng& rng);

 private:
  int k_;
  std::vector<std::vector<double>> eps_;
};

/// eps_I = e(I0).
EpsilonField lift_by_first(const HaarField& e);
/// eps_I = e(I0 + 2^-L I2), the interval of index i0 ^ (i2 >> L).
EpsilonField lift_bht(const HaarField& e, int L);

/// Sum over scales of the kernel at the cell triple (m0, m1, m2):
/// sum_j 2^j eps_j(I0, I2) [x0+x1+x2 in A_-j] r_j(x0+x1+x2).
double scale_kernel(const EpsilonField& eps, std::uint64_t m0, std::uint64_t m1, std::uint64_t m2);
/// 2^-m 1_{A_m}(s) - 1_{A_0}(s) for s = m0 ^ m1 ^ m2 at resolution K, m <= 0.
double telescoped_kernel(int K, int m, std::uint64_t s);

/// Exact grid evaluation of Lambda.
double lambda_direct(const GridFunction2D& f0, const GridFunction2D& f1, const GridFunction2D& f2,
                     const EpsilonField& eps);

/// Lambda_P = |I1|^-1 sum_{j = +-1} j iint A_j(x2) h_I2(x2) F1(x2,x0) h_I0(x0) B_j(x0)
/// with A_j(x2) = <F0(., x2), w_{I1^j x omega}> and B_j(x0) = <F2(x0, .), w_{I1^j x omega}>.
double lambda_bitile(const Bitile& p, const GridFunction2D& f0, const GridFunction2D& f1,
                     const GridFunction2D& f2);
/// sum over bitiles P in pp of eps_{I_P} Lambda_P.
double lambda_collection(const std::vector<Bitile>& pp, const GridFunction2D& f0, const GridFunction2D& f1,
                         const GridFunction2D& f2, const EpsilonField& eps);
/// The same sum over every bitile at resolution K.
double lambda_bitile_sum(const GridFunction2D& f0, const GridFunction2D& f1, const GridFunction2D& f2,
                         const EpsilonField& eps);

struct TreeReport {
  double value = 0;         ///< sum over the tree of eps Lambda_P
  double top_area = 0;      ///< |I0_T| |I2_T|
  double sizes[3] = {0, 0, 0};
  double bound = 0;         ///< top_area * size0 * size1 * size2
  double ratio = 0;         ///< |value| / bound, 0 when bound is 0
};
TreeReport lambda_tree(const Tree& t, const GridFunction2D& f0, const GridFunction2D& f1,
                       const GridFunction2D& f2, const EpsilonField& eps, const ProjectionMode& mode);

/// H f = sum_I eps_I |I|^-1 <f, h_I> h_I.
GridFunction1D haar_multiplier(const HaarField& eps, const GridFunction1D& f);
/// x -> w_{N(x)}(x) (H (w_{N(x)} f))(x).
GridFunction1D max_mod_haar(const HaarField& eps, const std::vector<std::uint64_t>& n, const GridFunction1D& f);

/// Functions whose form equals the integral of max_mod_haar(eps, N, f) g.
struct MaxModSubstitution {
  GridFunction2D f0, f1, f2;
};
MaxModSubstitution max_mod_substitution(const GridFunction1D& f, const GridFunction1D& g,
                                        const std::vector<std::uint64_t>& n);

struct BhtValues {
  double projections = 0;   ///< from the product of three time-frequency projections
  double coefficients = 0;  ///< from the expanded coefficient sum
};
/// The Walsh bilinear Hilbert form of parameter L >= 1, evaluated twice.
BhtValues bht_form(const HaarField& eps, int L, const GridFunction1D& f, const GridFunction1D& g,
                   const GridFunction1D& h);

struct BhtSubstitution {
  GridFunction2D f0, f1, f2;
};
/// F0 = f(x1 + x2 + 2^-L x2), F1 = h(2^-L x2 + x0), F2 = g(x0 + 2^-L x0 + 2^-L x1).
BhtSubstitution bht_substitution(const GridFunction1D& f, const GridFunction1D& g, const GridFunction1D& h,
                                 int L);

/// |Lambda(f(x1+x2), h(x0), g(x0)) - integral f H(gh)| with eps_I = e(I0).
double endpoint_identity_check(const HaarField& eps, const GridFunction1D& f, const GridFunction1D& g,
                               const GridFunction1D& h);

}  // namespace dyadic
