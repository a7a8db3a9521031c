#pragma once

#include "bnpg/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace bnpg {

namespace outcome {
struct Feasible {
  Solution solution;
};
/// The cheapest modification costs more than the budget. `witness` attains
/// `min_cost`.
struct InfeasibleWithinBudget {
  Rational min_cost{0};
  Solution witness;
};
/// No modification at any price reaches the target.
struct StructurallyInfeasible {
  std::string reason;
};
}  // namespace outcome

enum class SolverPath { none, gadget, exact_set, greedy, oracle };

std::string_view to_string(SolverPath path);

struct SolveStats {
  SolverPath path = SolverPath::none;
  int gadget_nodes = 0;
  std::size_t gadget_edges = 0;
  double matching_seconds = 0.0;
  std::uint64_t oracle_nodes = 0;
  std::optional<Rational> phase1_cost;  // exact-set solvers only
};

struct SolveOutcome {
  std::variant<outcome::Feasible, outcome::InfeasibleWithinBudget, outcome::StructurallyInfeasible> status;
  SolveStats stats;

  bool feasible() const { return std::holds_alternative<outcome::Feasible>(status); }
  /// Minimum modification cost when some modification reaches the target.
  std::optional<Rational> min_cost() const;
  /// The optimal solution (feasible or over budget), if any.
  const Solution* best() const;
};

inline constexpr int kDefaultOracleLimit = 6;

struct SolveOptions {
  int oracle_limit = kDefaultOracleLimit;
  /// Re-check gadgets and every produced solution; throws std::logic_error on
  /// an inconsistency. Never changes results.
  bool paranoid = false;
};

/// Target "all" with interval degree sets, through the matching gadget.
/// Returns the input graph unchanged at cost 0 when it already satisfies every
/// player. Throws InvalidInstance on a wrong target or a non-interval set.
SolveOutcome solve_all(const DesignInstance& inst, const SolveOptions& opts = {});

/// Target "exactly S" with interval degree sets. Cross edges between S and
/// the rest are fixed player by player (cheapest of pushing the count below
/// L or above R, removal on ties); S itself is then solved as target "all".
SolveOutcome solve_exact_set(const DesignInstance& inst, const SolveOptions& opts = {});

/// Target "exactly S" where every member of S has an upward-closed degree set
/// and additions inside S cost 1. The deficient members are first paired by
/// a maximum set of mutual additions, the remaining deficits are then filled
/// one edge each. Removal costs inside S are ignored since removing never
/// helps upward-closed sets.
SolveOutcome solve_unit_convex_fast(const DesignInstance& inst, const SolveOptions& opts = {});

/// Exhaustive branch-and-bound over edge sets and target-class investing
/// sets. Exact for every target class and every degree set. Throws
/// LimitExceeded when the instance has more than opts.oracle_limit players.
SolveOutcome solve_oracle(const DesignInstance& inst, const SolveOptions& opts = {});

/// True when the polynomial path applies: target "all" or "exactly S" and
/// every clamped degree set is an interval or empty.
bool polynomial_applicable(const DesignInstance& inst);

/// Dispatch. auto_select routes polynomial cases to solve_all /
/// solve_exact_set and the rest to solve_oracle; explicit kinds force a path.
SolveOutcome solve(const DesignInstance& inst, SolverKind kind = SolverKind::auto_select, const SolveOptions& opts = {});

/// Canonical outcome document: status, solver path and either the solution
/// fields, the minimum cost with its witness, or the reason.
std::string write_outcome(const SolveOutcome& out);

}  // namespace bnpg
