#pragma once

// Fiberwise multi-frequency Calderon-Zygmund decomposition: exceptional sets,
// the good function built from tree tops, and the replacement identity
//   Lambda_P(F0, F1, F2) = Lambda_P(F0, F1, G)  for P in the forest.
//
// Coordinates follow the storage of the form's arguments: E0 and B0 live in
// (x1, x2), E1, B1 and E1' in (x2, x0), E2 and B2 in (x0, x1).

#include <string>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/tiles.hpp"

namespace dyadic {

struct ExceptionalSetParams {
  double p0 = 4.0;
  double p2 = 4.0 / 3.0;
  /// Level above which the normalized maximal functions are exceptional.
  double threshold = 1024.0;
  /// Swap the roles of indices 0 and 2 (E0 <-> E2 transposed) and map back.
  bool transpose = false;
};

struct ExceptionalSets {
  CellSet2D b0;
  CellSet2D b1;
  CellSet2D b2;
  CellSet2D e1_prime;
  double b1_measure = 0;
};

/// B0 = {M_p0(|E0|^-1/p0 1_E0) > t}, B2 = {M~_p2(|E2|^-1/p2 1_E2) > t} with M~
/// along x1, B1 = pi_(1)((pi_(0)^-1 B0 u pi_(2)^-1 B2) n {x0+x1+x2 = 0}),
/// E1' = E1 \ B1. Empty E0 or E2 gives an empty exceptional set.
ExceptionalSets exceptional_sets(const CellSet2D& e0, const CellSet2D& e1, const CellSet2D& e2,
                                 const ExceptionalSetParams& params = {});

/// {x0} x J1, a vertical fiber interval in (x0, x1).
struct FiberInterval {
  std::uint64_t x0 = 0;
  DyadicInterval j1;
};

struct GoodFunction {
  GridFunction2D g;
  std::vector<FiberInterval> intervals;
  /// omegas[k]: the frequency intervals of length 1/|J1| attached to intervals[k].
  std::vector<std::vector<DyadicInterval>> omegas;
};

/// Maximal dyadic intervals J1 with {x0} x J1 inside the set, fiber by fiber.
std::vector<FiberInterval> maximal_fiber_intervals(const CellSet2D& b2);

/// The frequency intervals omega with |omega||J1| = 1 containing omega_T for a
/// tree top T whose I0 x I1 contains J.
std::vector<DyadicInterval> fiber_frequencies(const FiberInterval& j, const std::vector<Bitile>& tops, int K);

/// G = sum_J 1_J sum_{omega in Omega_J} Pi_{J1 x omega} F2(x0, .).
GoodFunction build_good_function(const GridFunction2D& f2, const std::vector<Bitile>& tops, const CellSet2D& b2);

struct ReplacementReport {
  double max_deviation = 0;
  double max_value = 0;  ///< max |Lambda_P(F0, F1, F2)|, for scale
  std::size_t checked = 0;
  /// Violated preconditions; the deviation is still computed.
  std::vector<std::string> violations;
};

/// max over P in pp of |Lambda_P(F0, F1, F2) - Lambda_P(F0, F1, G)|.
/// Preconditions checked: F1 vanishes on B1, F2 vanishes off B2, every P lies
/// below some top, and pi_(1) of every P is not inside B1.
ReplacementReport replacement_check(const std::vector<Bitile>& pp, const GridFunction2D& f0,
                                    const GridFunction2D& f1, const GridFunction2D& f2, const GoodFunction& good,
                                    const std::vector<Bitile>& tops, const ExceptionalSets& sets);

struct GNormReport {
  double g_norm = 0;          ///< ||G||_2
  double counting_norm = 0;   ///< ||N_k||_p, N_k = sum_T 1_{I0_T x I1_T} in (x0, x1)
  double ratio = 0;           ///< ||G||_2^2 / ||N_k||_p^(1 - 2/p2'), 0 when G = 0
  /// max over J of ||G_J||^2 / (|Omega_J| ||F2||_{L^inf(J)}^2 |J1|); at most 1.
  double max_sup_ratio = 0;
  /// max over J of ||G_J||^2 / (|Omega_J|^(1-2/p2') ||F2||_{L^p2(J)}^2 |J1|^(1-2/p2)); at most 1.
  double max_hausdorff_young_ratio = 0;
  GridFunction2D counting;
};

GNormReport g_norm_report(const GoodFunction& good, const GridFunction2D& f2, const std::vector<Bitile>& tops,
                          double p2, double p);

}  // namespace dyadic
