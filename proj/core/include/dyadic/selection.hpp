#pragma once

// The size functional and tree selection with a checkable certificate.
//
// Given a convex collection and a level n, select_trees removes three
// families of trees (down-sets) so that the remainder has size at most 2^-n,
// and the removed tree tops satisfy a Carleson-type counting bound.

#include <string>
#include <vector>

#include "dyadic/grid.hpp"
#include "dyadic/tiles.hpp"

namespace dyadic {

/// max over P0 in pp of |I_P0|^-1/2 ||Pi^(i)_{T(P0)} F||_2, T(P0) = {P in pp : P <= P0}.
double size(int i, const std::vector<Bitile>& pp, const GridFunction2D& f, const ProjectionMode& mode);

struct SelectionPhase {
  /// 0 for the maximal-bitile phase, otherwise the half index j = -1 or +1.
  int j = 0;
  /// In order of selection; each tree is the down-set of its top in what
  /// remained when it was chosen.
  std::vector<Tree> trees;
};

struct CountingRow {
  int level = 0;  ///< test box J = J0 x J2 with |J0| = |J2| = 2^-level
  std::uint64_t j0 = 0;
  std::uint64_t j2 = 0;
  double tops_area = 0;  ///< sum over selected trees with I_T inside J of |I_T|
  double bound = 0;      ///< 9 2^(2n) ||1_{pi_(i) J} F||_2^2
};

struct SelectionCertificate {
  int index = 0;
  int n = 0;
  ProjectionMode mode;
  std::vector<Bitile> input;
  std::vector<Bitile> remainder;
  std::vector<SelectionPhase> phases;  ///< j = 0, then -1, then +1
  std::vector<CountingRow> counting;
  double remainder_size = 0;
};

SelectionCertificate select_trees(int i, const std::vector<Bitile>& pp, const GridFunction2D& f,
                                  const ProjectionMode& mode, int n);

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> failures;
  double remainder_size = 0;
  double size_bound = 0;               ///< 2^-n
  double max_counting_ratio = 0;       ///< max over J of tops_area / bound
  /// Max over remaining tops of sum_{T_j} ||Pi_{P^-j} F||^2 / (3^-1 2^-2n |I_T|).
  double max_tree_ratio_linear = 0;
  /// The same against 3^-1 2^-2n |I_T|^2.
  double max_tree_ratio_squared = 0;
};

/// Rechecks a certificate from scratch against F.
VerificationReport verify_certificate(const SelectionCertificate& cert, const GridFunction2D& f, int i, int n,
                                      const ProjectionMode& mode = {});

/// ||1_{pi_(i) J} F||_2^2 for every test box, from 2D prefix sums of F^2.
class BoxEnergy {
 public:
  BoxEnergy(int i, const GridFunction2D& f);
  double energy(const Box& j) const;

 private:
  int i_;
  int k_;
  std::vector<double> prefix_;
};

}  // namespace dyadic
