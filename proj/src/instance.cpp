#include "bnpg/instance.hpp"

#include "bnpg/error.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <stdexcept>

namespace bnpg {

CostMatrix::CostMatrix(const Graph& graph, Cost default_add, Cost default_remove)
    : n_(graph.size()), default_add_(default_add), default_remove_(default_remove) {
  cost_.resize(static_cast<std::size_t>(n_) * (n_ > 0 ? n_ - 1 : 0) / 2);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) cost_[slot(i, j)] = graph.has_edge(i, j) ? default_remove : default_add;
  }
}

std::size_t CostMatrix::slot(int i, int j) const {
  if (i == j) throw std::invalid_argument(fmt::format("no cost entry for loop ({},{})", i, j));
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range(fmt::format("pair ({},{}) out of range", i, j));
  if (i > j) std::swap(i, j);
  // Rows 0..i-1 hold n-1, n-2, ... entries.
  std::size_t row = static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2;
  return row + static_cast<std::size_t>(j - i - 1);
}

const Cost& CostMatrix::at(int i, int j) const { return cost_[slot(i, j)]; }
void CostMatrix::set(int i, int j, Cost c) { cost_[slot(i, j)] = c; }

bool in_target(const TargetClass& t, const StrategyProfile& x) {
  return std::visit(
      [&](const auto& cls) -> bool {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, target::All>) {
          return x.investor_count() == x.size();
        } else if constexpr (std::is_same_v<T, target::ExactSet>) {
          return x.investing_set() == cls.members;
        } else if constexpr (std::is_same_v<T, target::SupersetOf>) {
          return std::all_of(cls.members.begin(), cls.members.end(), [&](int i) { return x.invests(i); });
        } else {
          return x.investor_count() >= cls.r;
        }
      },
      t);
}

std::string describe(const TargetClass& t) {
  return std::visit(
      [](const auto& cls) -> std::string {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, target::All>) {
          return "all";
        } else if constexpr (std::is_same_v<T, target::ExactSet>) {
          return fmt::format("exact:{}", fmt::join(cls.members, ","));
        } else if constexpr (std::is_same_v<T, target::SupersetOf>) {
          return fmt::format("superset:{}", fmt::join(cls.members, ","));
        } else {
          return fmt::format("atleast:{}", cls.r);
        }
      },
      t);
}

Cost modification_cost(const DesignInstance& inst, const Graph& final_edges) {
  Cost total(0);
  for (auto [i, j] : symmetric_difference(inst.graph, final_edges)) total = total + inst.costs.at(i, j);
  return total;
}

Solution make_solution(const DesignInstance& inst, Graph final_edges, StrategyProfile investing) {
  Solution sol;
  for (auto [i, j] : symmetric_difference(inst.graph, final_edges)) {
    (final_edges.has_edge(i, j) ? sol.added : sol.removed).emplace_back(i, j);
  }
  Cost c = modification_cost(inst, final_edges);
  if (c.is_infinite()) throw InvalidInstance("solution toggles a prohibited pair");
  sol.modification_cost = c.value();
  sol.final_edges = std::move(final_edges);
  sol.investing = std::move(investing);
  return sol;
}

namespace {

void check_player_set(const std::vector<int>& members, int n, std::vector<Diagnostic>& out) {
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (members[k] < 0 || members[k] >= n) {
      out.push_back({Diagnostic::Severity::error, "target-range", members[k],
                     fmt::format("target member {} out of range", members[k])});
    }
    if (k > 0 && members[k] <= members[k - 1]) {
      out.push_back({Diagnostic::Severity::error, "target-order", members[k],
                     "target set must be sorted and duplicate-free"});
    }
  }
}

}  // namespace

std::vector<Diagnostic> validate(const DesignInstance& inst, SolverKind requested) {
  std::vector<Diagnostic> out;
  const int n = inst.size();
  if (static_cast<int>(inst.degsets.size()) != n) {
    out.push_back({Diagnostic::Severity::error, "size", std::nullopt,
                   fmt::format("{} degree sets for {} players", inst.degsets.size(), n)});
    return out;
  }
  if (inst.costs.size() != n) {
    out.push_back({Diagnostic::Severity::error, "size", std::nullopt, "cost matrix size differs from player count"});
    return out;
  }
  if (inst.utilities) {
    if (static_cast<int>(inst.utilities->size()) != n) {
      out.push_back({Diagnostic::Severity::error, "size", std::nullopt, "utility table count differs from player count"});
    } else {
      for (int i = 0; i < n; ++i) {
        const auto& u = (*inst.utilities)[i];
        if (u.player_count() != n) {
          out.push_back({Diagnostic::Severity::error, "utility-length", i,
                         fmt::format("utility table of player {} has {} values, expected {}", i,
                                     u.values().size(), n + 1)});
        } else if (derive_degree_set(u).members() != inst.degsets[i].members()) {
          out.push_back({Diagnostic::Severity::error, "utility-mismatch", i,
                         fmt::format("degree set of player {} disagrees with its utility table", i)});
        }
      }
    }
  }

  std::vector<char> required(n, 0);
  std::visit(
      [&](const auto& cls) {
        using T = std::decay_t<decltype(cls)>;
        if constexpr (std::is_same_v<T, target::All>) {
          std::fill(required.begin(), required.end(), 1);
        } else if constexpr (std::is_same_v<T, target::AtLeast>) {
          if (cls.r < 0 || cls.r > n) {
            out.push_back({Diagnostic::Severity::error, "target-range", std::nullopt,
                           fmt::format("r={} outside [0, {}]", cls.r, n)});
          }
        } else {
          check_player_set(cls.members, n, out);
          for (int i : cls.members) {
            if (i >= 0 && i < n) required[i] = 1;
          }
        }
      },
      inst.target);

  for (int i = 0; i < n; ++i) {
    const auto& d = inst.degsets[i];
    if (!d.empty() && d.max() >= n) {
      out.push_back({Diagnostic::Severity::warning, "clamped", i,
                     fmt::format("degree set of player {} has members above n-1={}; they are unreachable", i, n - 1)});
    }
    if (required[i] && d.clamped(n).empty()) {
      out.push_back({Diagnostic::Severity::error, "empty-degree-set", i,
                     fmt::format("infeasible: empty degree set (player {})", i)});
    }
  }

  if (requested == SolverKind::gadget || requested == SolverKind::greedy) {
    bool poly_target = std::holds_alternative<target::All>(inst.target) ||
                       std::holds_alternative<target::ExactSet>(inst.target);
    if (!poly_target) {
      out.push_back({Diagnostic::Severity::error, "unsupported-target", std::nullopt,
                     "polynomial solvers handle only the all and exact-set targets"});
    }
    for (int i = 0; i < n; ++i) {
      auto d = inst.degsets[i].clamped(n);
      if (!d.empty() && !d.is_interval()) {
        out.push_back({Diagnostic::Severity::error, "non-interval", i,
                       fmt::format("non-interval degree set (player {})", i)});
      }
    }
  }
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::error; });
}

VerifyReport verify_solution(const DesignInstance& inst, const Solution& sol) {
  VerifyReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.failures.push_back(std::move(msg));
  };
  const int n = inst.size();
  if (sol.final_edges.size() != n || sol.investing.size() != n || static_cast<int>(inst.degsets.size()) != n) {
    fail("size mismatch");
    return report;
  }

  std::vector<Edge> added, removed;
  for (auto [i, j] : symmetric_difference(inst.graph, sol.final_edges)) {
    (sol.final_edges.has_edge(i, j) ? added : removed).emplace_back(i, j);
  }
  auto sorted = [](std::vector<Edge> v) {
    for (auto& e : v) e = make_edge(e.first, e.second);
    std::sort(v.begin(), v.end());
    return v;
  };
  if (sorted(sol.added) != added || sorted(sol.removed) != removed) {
    fail("added/removed lists disagree with the final edge set");
  }

  Cost recomputed = modification_cost(inst, sol.final_edges);
  if (recomputed.is_infinite()) {
    fail("prohibited modification: a toggled pair has infinite cost");
  } else {
    if (recomputed.value() != sol.modification_cost) {
      fail(fmt::format("cost mismatch: stated {}, recomputed {}", format_rational(sol.modification_cost),
                       format_rational(recomputed.value())));
    }
    if (recomputed > inst.budget) {
      fail(fmt::format("over budget: cost {} exceeds budget {}", format_rational(recomputed.value()),
                       format_cost(inst.budget)));
    }
  }

  for (int i = 0; i < n; ++i) {
    int count = neighbor_investors(sol.final_edges, sol.investing, i);
    if (!is_best_response(inst.degsets[i], sol.investing.invests(i), count)) {
      fail(fmt::format("player {} {} with {} investing neighbors, which is not a best response", i,
                       sol.investing.invests(i) ? "invests" : "does not invest", count));
    }
  }
  if (!in_target(inst.target, sol.investing)) {
    fail(fmt::format("investing set is not in target class {}", describe(inst.target)));
  }
  return report;
}

}  // namespace bnpg
