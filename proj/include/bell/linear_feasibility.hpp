#pragma once

#include <array>
#include <vector>

namespace bell {

enum class Feasibility { Feasible, Infeasible, SolverFailure };

// Decides whether `target` lies (within tol, in the L1 phase-1 sense) in the
// convex hull of `vertices`: exists w >= 0, sum w = 1, sum w_i v_i = target.
// Solved by a phase-1 dense simplex with Bland's rule.
Feasibility convex_combination_exists(const std::vector<std::array<double, 8>>& vertices,
                                      const std::array<double, 8>& target,
                                      double tol = 1e-9);

}  // namespace bell
