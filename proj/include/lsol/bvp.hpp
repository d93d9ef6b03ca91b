#pragma once

#include <optional>

#include "lsol/grid.hpp"
#include "lsol/model.hpp"

namespace lsol {

/// Solution of −u″ = λu − a(x)u^p on [0, R] with u(R) = M and the problem's
/// condition at 0, second-order centred differences with a ghost node for Robin.
/// Damped Newton from `guess` (default: linear ramp up to M).
GridFunction solve_truncated(const Problem& problem, double M, int n,
                             const std::optional<GridFunction>& guess = std::nullopt);

/// Same, reached by continuation through M = 10, 40, 160, ... below the target,
/// or through 4·M_start, 16·M_start, ... when a solved `start` is given.
/// Falls back to monotone iteration when a Newton solve fails.
GridFunction solve_truncated_continuation(const Problem& problem, double M, int n,
                                          const std::optional<GridFunction>& start = std::nullopt);

/// Positive solution of −q″ = λq − λa(x)q^p with q(R) = 0.
GridFunction solve_logistic(const Problem& problem, int n);

enum class MonotoneStart { Sub, Super };

/// Sub/supersolution iteration (−D² + K)w⁺ = λw − a w^p + K w for the truncated problem.
/// Stops once the step and the extrapolated distance to the limit are both ≤ tol.
GridFunction monotone_iterate(const Problem& problem, double M, const GridFunction& sub, const GridFunction& super,
                              int n, MonotoneStart start = MonotoneStart::Super, double tol = 1e-10);

/// Max-norm of the discrete operator rows (boundary closure included) relative
/// to 1 + max a·|u|^p, with the grid's own end value as the right datum.
double residual(const GridFunction& grid, const Problem& problem);

}  // namespace lsol
