#pragma once

// Random instances shared by the verification suites and the constant probes.

#include <cstdint>
#include <string>
#include <vector>

#include "dyadic/covering.hpp"
#include "dyadic/mfcz.hpp"
#include "dyadic/random.hpp"
#include "dyadic/tiles.hpp"

namespace dyadiclab {

/// F0 with adapted projections: diagonal f(x1 + a (*) x2) or fiberwise
/// f(x2) w_{N(x2)}(x1).
struct StructuredF0 {
  dyadic::ProjectionMode mode;
  dyadic::GridFunction2D f0;
};

StructuredF0 diagonal_f0(const dyadic::GridFunction1D& f, const dyadic::WalshNumber& a);
StructuredF0 fiberwise_f0(const dyadic::GridFunction1D& f, const std::vector<std::uint64_t>& n);
/// N(x2) uniform on {0, ..., 2^K - 1}.
std::vector<std::uint64_t> random_choice_function(int K, dyadic::Rng& rng);

/// Convex hull of `seed` plus `extra` uniformly drawn bitiles.
std::vector<dyadic::Bitile> random_convex_collection(int K, const std::vector<dyadic::Bitile>& seed, int extra,
                                                     dyadic::Rng& rng);
/// A tree under a uniformly drawn top: the convex hull of the top and a
/// random quarter of the bitiles below it.
dyadic::Tree random_tree(int K, dyadic::Rng& rng);

/// Indicator of `cells` cells times independent random signs.
dyadic::GridFunction2D signed_indicator(const dyadic::CellSet2D& e, dyadic::Rng& rng);

struct MfczInstance {
  dyadic::ExceptionalSets sets;
  dyadic::GridFunction2D f0, f1, f2;
  std::vector<dyadic::Bitile> tops;
  std::vector<dyadic::Bitile> forest;
  dyadic::GoodFunction good;
};

/// Sets E0, E1, E2 with E2 sparse; F0 diagonal or fiberwise on E0, F1 on E1',
/// F2 on E2, all normalized by |E_i|^-1/p_i. Trees come from selecting on F0
/// over the bitiles whose pi_(1) shadow leaves B1, for levels n = 1..generations.
/// The exceptional threshold is drawn just below |E2|^-1/p2 2^-m/p2 with
/// m in {0, ..., 3}, so that B2 holds E2 and is made of short fiber intervals;
/// base.threshold is ignored.
MfczInstance random_mfcz_instance(int K, const dyadic::ExceptionalSetParams& base, double p1, bool fiberwise,
                                  const dyadic::WalshNumber& a, int generations, dyadic::Rng& rng);

struct RestrictedTrial {
  double value = 0;  ///< |Lambda|
  double a[3] = {0, 0, 0};  ///< decreasing rearrangement of |E0|, |E1|, |E2|
  double bound = 0;  ///< a1^1/2 a2^1/2 (1 + log(a0 / a1))
  double ratio = 0;
};

/// Sets of measure 2^-e with e drawn from {0, ..., 8} (E0 from {0, ..., K},
/// since it is a union of full diagonal fibers), random signs, random eps.
RestrictedTrial restricted_type_trial(int K, bool fiberwise, const dyadic::WalshNumber& a, dyadic::Rng& rng);

struct CoverEnsemble {
  std::vector<dyadic::Parallelogram> all;
  dyadic::SlopeField field;
  std::vector<dyadic::Parallelogram> dense;  ///< |E(R)| >= delta |R|, Lipschitz-admissible
};

/// field: "constant", "linear" or "lipschitz".
CoverEnsemble random_cover_ensemble(int K, const std::string& field, std::size_t count, double delta,
                                    dyadic::Rng& rng);

/// A random pair satisfying the hypotheses of the 7R lemma, with dyadic data.
std::pair<dyadic::Parallelogram, dyadic::Parallelogram> random_lemma7r_pair(dyadic::Rng& rng);

}  // namespace dyadiclab
