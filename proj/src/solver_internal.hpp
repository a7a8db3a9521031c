#pragma once

#include "bnpg/solver.hpp"

namespace bnpg::detail {

/// Wraps an optimal solution: Feasible within budget, otherwise
/// InfeasibleWithinBudget. Paranoid mode re-verifies it against the instance
/// with the budget lifted.
SolveOutcome settle(const DesignInstance& inst, Solution sol, SolveStats stats, const SolveOptions& opts);

SolveOutcome structurally_infeasible(std::string reason, SolveStats stats);

}  // namespace bnpg::detail
