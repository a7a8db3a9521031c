#pragma once

#include "bnpg/game.hpp"
#include "bnpg/graph.hpp"
#include "bnpg/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bnpg {

/// Symmetric pair-cost table. For a pair present in the input graph the entry
/// is its removal cost, otherwise its addition cost. Dense, so symmetry holds
/// by construction.
class CostMatrix {
 public:
  CostMatrix() = default;
  /// Every pair starts at `default_add` (absent in `graph`) or `default_remove`
  /// (present in `graph`).
  CostMatrix(const Graph& graph, Cost default_add = Cost(1), Cost default_remove = Cost(1));

  int size() const { return n_; }
  const Cost& at(int i, int j) const;
  void set(int i, int j, Cost c);

  const Cost& default_add() const { return default_add_; }
  const Cost& default_remove() const { return default_remove_; }

  friend bool operator==(const CostMatrix&, const CostMatrix&) = default;

 private:
  std::size_t slot(int i, int j) const;

  int n_ = 0;
  Cost default_add_{1};
  Cost default_remove_{1};
  std::vector<Cost> cost_;  // upper triangle, row-major
};

namespace target {
struct All {
  friend bool operator==(const All&, const All&) = default;
};
struct ExactSet {
  std::vector<int> members;
  friend bool operator==(const ExactSet&, const ExactSet&) = default;
};
struct SupersetOf {
  std::vector<int> members;
  friend bool operator==(const SupersetOf&, const SupersetOf&) = default;
};
struct AtLeast {
  int r = 0;
  friend bool operator==(const AtLeast&, const AtLeast&) = default;
};
}  // namespace target

/// Equilibrium family the principal aims for.
using TargetClass = std::variant<target::All, target::ExactSet, target::SupersetOf, target::AtLeast>;

bool in_target(const TargetClass& t, const StrategyProfile& x);
std::string describe(const TargetClass& t);

/// Network design for degree sets: input graph G', degree sets, pair costs,
/// budget and target class. Utility tables are kept when the instance was
/// specified through them.
struct DesignInstance {
  Graph graph;
  std::vector<DegreeSet> degsets;
  CostMatrix costs;
  Cost budget{0};
  TargetClass target = target::All{};
  std::optional<std::vector<UtilityTable>> utilities;
  std::map<std::string, std::string> metadata;

  int size() const { return graph.size(); }

  friend bool operator==(const DesignInstance&, const DesignInstance&) = default;
};

struct Solution {
  Graph final_edges;
  StrategyProfile investing;
  Rational modification_cost{0};
  std::vector<Edge> added;    // E \ E'
  std::vector<Edge> removed;  // E' \ E

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Builds a Solution from a final graph, filling added/removed and the
/// symmetric-difference cost. Throws InvalidInstance if a prohibited (infinite
/// cost) pair is toggled.
Solution make_solution(const DesignInstance& inst, Graph final_edges, StrategyProfile investing);

/// Sum of pair costs over E xor E'; infinite if any toggled pair is prohibited.
Cost modification_cost(const DesignInstance& inst, const Graph& final_edges);

enum class SolverKind { auto_select, gadget, greedy, oracle };

struct Diagnostic {
  enum class Severity { error, warning };
  Severity severity = Severity::error;
  std::string code;
  std::optional<int> player;
  std::string message;
};

/// Structural checks. Empty degree sets of players the target requires to
/// invest are errors ("infeasible: empty degree set"); when a polynomial
/// solver is requested, non-interval sets are errors as well.
std::vector<Diagnostic> validate(const DesignInstance& inst, SolverKind requested = SolverKind::auto_select);

bool has_errors(const std::vector<Diagnostic>& diags);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks a claimed solution: size consistency, added/removed consistent with
/// the final graph, recomputed cost equal to the stated cost and within budget,
/// the equilibrium conditions for every player, and membership of I in the
/// target class.
VerifyReport verify_solution(const DesignInstance& inst, const Solution& sol);

}  // namespace bnpg
