#pragma once

// Dyadic maximal operators and level sets on grid functions.

#include <vector>

#include "dyadic/grid.hpp"

namespace dyadic {

enum class Axis {
  First,   ///< maximal function along the first variable, second held fixed
  Second,  ///< along the second variable, first held fixed
};

/// At each cell: max over dyadic intervals (squares) containing it of the
/// average of |F|.
GridFunction1D dyadic_maximal(const GridFunction1D& f);
GridFunction2D dyadic_maximal(const GridFunction2D& f);

/// Average of |F| over the dyadic square of side 2^-level containing each cell.
GridFunction2D dyadic_average(const GridFunction2D& f, int level);

/// (M |F|^q)^(1/q), q > 1.
GridFunction1D q_maximal(const GridFunction1D& f, double q);
GridFunction2D q_maximal(const GridFunction2D& f, double q);

/// One-dimensional dyadic (q-)maximal function along one axis; q = 1 gives the
/// plain maximal function.
GridFunction2D directional_maximal(const GridFunction2D& f, Axis axis, double q = 1.0);

/// {F > lambda}.
CellSet2D level_set(const GridFunction2D& f, double lambda);
/// {F >= lambda}.
CellSet2D level_set_at_least(const GridFunction2D& f, double lambda);
std::vector<bool> level_set(const GridFunction1D& f, double lambda);

}  // namespace dyadic
