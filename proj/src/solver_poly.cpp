#include "bnpg/gadget.hpp"
#include "bnpg/matching.hpp"
#include "bnpg/solver.hpp"
#include "solver_internal.hpp"

#include <algorithm>
#include <chrono>
#include <fmt/format.h>
#include <set>

namespace bnpg {

namespace {

const std::vector<int>& exact_members(const DesignInstance& inst) {
  const auto* t = std::get_if<target::ExactSet>(&inst.target);
  if (!t) throw InvalidInstance("this solver needs an exact-set target");
  return t->members;
}

void require_all_target(const DesignInstance& inst) {
  if (!std::holds_alternative<target::All>(inst.target)) throw InvalidInstance("this solver needs the target \"all\"");
}

std::optional<std::string> empty_set_reason(const DesignInstance& inst, std::span<const int> players) {
  for (int i : players) {
    if (inst.degsets[i].clamped(inst.size()).empty()) return fmt::format("infeasible: empty degree set (player {})", i);
  }
  return std::nullopt;
}

void require_intervals(const DesignInstance& inst) {
  for (int i = 0; i < inst.size(); ++i) {
    auto d = inst.degsets[i].clamped(inst.size());
    if (!d.empty() && !d.is_interval()) {
      throw GadgetBuildError(GadgetBuildError::Reason::non_interval_degree_set, i);
    }
  }
}

struct CrossFix {
  std::vector<Edge> toggles;
  Rational cost{0};
  std::optional<std::string> infeasible;
};

struct Candidate {
  Rational cost;
  int other;
  friend bool operator<(const Candidate& a, const Candidate& b) {
    return a.cost != b.cost ? a.cost < b.cost : a.other < b.other;
  }
};

// For every player outside S whose count of S-neighbors lies in its degree
// set, pushes the count just below the interval or just above it, whichever
// is cheaper (removal on ties).
CrossFix fix_cross_edges(const DesignInstance& inst, const std::vector<char>& in_s, int s_size) {
  const int n = inst.size();
  CrossFix fix;
  for (int i = 0; i < n; ++i) {
    if (in_s[i]) continue;
    int k = 0;
    std::vector<Candidate> removable, addable;
    for (int j = 0; j < n; ++j) {
      if (!in_s[j]) continue;
      bool present = inst.graph.has_edge(i, j);
      k += present;
      const Cost& c = inst.costs.at(i, j);
      if (c.is_infinite()) continue;
      (present ? removable : addable).push_back({c.value(), j});
    }
    DegreeSet d = inst.degsets[i].clamped(n);
    if (d.empty() || !d.contains(k)) continue;
    std::sort(removable.begin(), removable.end());
    std::sort(addable.begin(), addable.end());

    auto price = [](const std::vector<Candidate>& list, int need) {
      Rational sum(0);
      for (int t = 0; t < need; ++t) sum += list[t].cost;
      return sum;
    };
    const int lo = d.min(), hi = d.max();
    const int need_remove = k - lo + 1;
    const int need_add = hi + 1 - k;
    bool can_remove = lo >= 1 && static_cast<int>(removable.size()) >= need_remove;
    bool can_add = hi + 1 <= s_size && static_cast<int>(addable.size()) >= need_add;
    if (!can_remove && !can_add) {
      fix.infeasible = fmt::format(
          "player {} cannot leave its degree set [{}, {}] through edges to the investing set (count {})", i, lo, hi, k);
      return fix;
    }
    Rational remove_cost = can_remove ? price(removable, need_remove) : Rational(0);
    Rational add_cost = can_add ? price(addable, need_add) : Rational(0);
    if (can_remove && (!can_add || remove_cost <= add_cost)) {
      for (int t = 0; t < need_remove; ++t) fix.toggles.push_back(make_edge(i, removable[t].other));
      fix.cost += remove_cost;
    } else {
      for (int t = 0; t < need_add; ++t) fix.toggles.push_back(make_edge(i, addable[t].other));
      fix.cost += add_cost;
    }
  }
  std::sort(fix.toggles.begin(), fix.toggles.end());
  return fix;
}

DesignInstance restrict_to(const DesignInstance& inst, const std::vector<int>& members) {
  const int m = static_cast<int>(members.size());
  DesignInstance sub;
  sub.graph = inst.graph.induced(members);
  for (int i : members) {
    std::vector<int> inside;
    for (int z : inst.degsets[i].members()) {
      if (z < m) inside.push_back(z);
    }
    sub.degsets.emplace_back(std::move(inside), m);
  }
  sub.costs = CostMatrix(sub.graph, inst.costs.default_add(), inst.costs.default_remove());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) sub.costs.set(a, b, inst.costs.at(members[a], members[b]));
  }
  sub.budget = Cost::infinity();
  sub.target = target::All{};
  return sub;
}

Graph apply_toggles(Graph g, const std::vector<Edge>& toggles) {
  for (auto [i, j] : toggles) g.set_edge(i, j, !g.has_edge(i, j));
  return g;
}

void copy_inside(Graph& whole, const Graph& part, const std::vector<int>& members) {
  const int m = static_cast<int>(members.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) whole.set_edge(members[a], members[b], part.has_edge(a, b));
  }
}

// Largest set of additions between deficient players, each joining two
// currently non-adjacent players and each player taking at most its deficit.
// Solved as a perfect matching: every unit of deficit is a copy node that
// either takes one end of a candidate addition or falls back to a private
// dummy at cost 1; spare dummies pair up for free.
std::vector<Edge> max_mutual_additions(const Graph& g, const std::vector<int>& deficit) {
  const int n = g.size();
  std::vector<std::vector<int>> copies(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < deficit[i]; ++t) copies[i].push_back(next++);
  }
  const int total = next;
  std::vector<int> dummies;
  for (int t = 0; t < total; ++t) dummies.push_back(next++);
  struct Slot {
    Edge pair;
    int a, b;
  };
  std::vector<Slot> slots;
  for (int i = 0; i < n; ++i) {
    if (deficit[i] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (deficit[j] == 0 || g.has_edge(i, j)) continue;
      slots.push_back({{i, j}, next, next + 1});
      next += 2;
    }
  }
  WeightedGraph h(next);
  for (int t = 0; t < total; ++t) h.add_edge(t, dummies[t], 1);
  for (std::size_t a = 0; a < dummies.size(); ++a) {
    for (std::size_t b = a + 1; b < dummies.size(); ++b) h.add_edge(dummies[a], dummies[b], 0);
  }
  for (const auto& s : slots) {
    h.add_edge(s.a, s.b, 0);
    for (int c : copies[s.pair.first]) h.add_edge(s.a, c, 0);
    for (int c : copies[s.pair.second]) h.add_edge(s.b, c, 0);
  }
  auto m = min_cost_perfect_matching(h);
  if (!m) throw std::logic_error("pairing gadget has no perfect matching");
  std::set<std::pair<int, int>> matched(m->pairs.begin(), m->pairs.end());
  std::vector<Edge> out;
  for (const auto& s : slots) {
    if (!matched.count({s.a, s.b})) out.push_back(s.pair);
  }
  return out;
}

}  // namespace

SolveOutcome solve_all(const DesignInstance& inst, const SolveOptions& opts) {
  require_all_target(inst);
  const int n = inst.size();
  SolveStats stats;
  stats.path = SolverPath::gadget;
  std::vector<int> everyone(n);
  for (int i = 0; i < n; ++i) everyone[i] = i;
  if (auto reason = empty_set_reason(inst, everyone)) return detail::structurally_infeasible(*reason, stats);
  require_intervals(inst);

  const StrategyProfile all(n, true);
  bool satisfied = true;
  for (int i = 0; i < n && satisfied; ++i) satisfied = inst.degsets[i].contains(inst.graph.degree(i));
  if (satisfied) return detail::settle(inst, make_solution(inst, inst.graph, all), stats, opts);

  GadgetGraph gg = build_gadget(inst);
  stats.gadget_nodes = static_cast<int>(gg.nodes.size());
  stats.gadget_edges = gg.graph.edges().size();
  if (opts.paranoid) {
    auto violations = verify_gadget(gg);
    if (!violations.empty()) throw std::logic_error("gadget self-check failed: " + violations.front().message);
  }
  auto t0 = std::chrono::steady_clock::now();
  auto m = min_cost_perfect_matching(gg.graph);
  stats.matching_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!m) {
    return detail::structurally_infeasible("no modification puts every degree inside its interval", stats);
  }
  Modification mod = extract_modification(gg, *m);
  Solution sol = make_solution(inst, mod.final_edges, all);
  if (sol.modification_cost != mod.cost) throw std::logic_error("gadget cost differs from the modification cost");
  return detail::settle(inst, std::move(sol), stats, opts);
}

SolveOutcome solve_exact_set(const DesignInstance& inst, const SolveOptions& opts) {
  const auto& members = exact_members(inst);
  const int n = inst.size();
  SolveStats stats;
  stats.path = SolverPath::exact_set;
  if (auto reason = empty_set_reason(inst, members)) return detail::structurally_infeasible(*reason, stats);
  require_intervals(inst);

  std::vector<char> in_s(n, 0);
  for (int i : members) in_s.at(i) = 1;
  CrossFix fix = fix_cross_edges(inst, in_s, static_cast<int>(members.size()));
  stats.phase1_cost = fix.cost;
  if (fix.infeasible) return detail::structurally_infeasible(*fix.infeasible, stats);

  DesignInstance sub = restrict_to(inst, members);
  SolveOptions inner_opts = opts;
  inner_opts.paranoid = false;
  SolveOutcome inner = solve_all(sub, inner_opts);
  stats.gadget_nodes = inner.stats.gadget_nodes;
  stats.gadget_edges = inner.stats.gadget_edges;
  stats.matching_seconds = inner.stats.matching_seconds;
  const Solution* inside = inner.best();
  if (!inside) {
    const auto& why = std::get<outcome::StructurallyInfeasible>(inner.status).reason;
    return detail::structurally_infeasible("inside the investing set: " + why, stats);
  }

  Graph final_edges = apply_toggles(inst.graph, fix.toggles);
  copy_inside(final_edges, inside->final_edges, members);
  Solution sol = make_solution(inst, std::move(final_edges), StrategyProfile::from_set(n, members));
  if (sol.modification_cost != fix.cost + inside->modification_cost) {
    throw std::logic_error("phase costs do not add up to the modification cost");
  }
  return detail::settle(inst, std::move(sol), stats, opts);
}

SolveOutcome solve_unit_convex_fast(const DesignInstance& inst, const SolveOptions& opts) {
  const auto& members = exact_members(inst);
  const int n = inst.size();
  const int m = static_cast<int>(members.size());
  SolveStats stats;
  stats.path = SolverPath::greedy;
  if (auto reason = empty_set_reason(inst, members)) return detail::structurally_infeasible(*reason, stats);
  require_intervals(inst);
  for (int i : members) {
    if (inst.degsets[i].clamped(n).max() != n - 1) {
      throw InvalidInstance(fmt::format("degree set of player {} is not upward-closed", i));
    }
  }
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      int i = members[a], j = members[b];
      if (!inst.graph.has_edge(i, j) && inst.costs.at(i, j) != Cost(1)) {
        throw InvalidInstance(fmt::format("addition cost of ({},{}) inside the investing set is not 1", i, j));
      }
    }
  }

  std::vector<char> in_s(n, 0);
  for (int i : members) in_s.at(i) = 1;
  CrossFix fix = fix_cross_edges(inst, in_s, m);
  stats.phase1_cost = fix.cost;
  if (fix.infeasible) return detail::structurally_infeasible(*fix.infeasible, stats);

  Graph inside = inst.graph.induced(members);
  std::vector<int> deficit(m, 0);
  for (int a = 0; a < m; ++a) {
    int threshold = inst.degsets[members[a]].clamped(n).min();
    if (threshold > m - 1) {
      return detail::structurally_infeasible(
          fmt::format("player {} needs {} investing neighbors but only {} other players invest", members[a], threshold,
                      m - 1),
          stats);
    }
    deficit[a] = std::max(0, threshold - inside.degree(a));
  }

  std::vector<char> never_deficient(m, 0);
  for (int a = 0; a < m; ++a) never_deficient[a] = deficit[a] == 0;
  for (auto [a, b] : max_mutual_additions(inside, deficit)) {
    inside.add_edge(a, b);
    --deficit[a];
    --deficit[b];
  }
  // Remaining deficits: one new edge each, preferring players that were never
  // deficient. No two players with deficit left are non-adjacent here.
  for (int a = 0; a < m; ++a) {
    for (int pass = 0; pass < 2 && deficit[a] > 0; ++pass) {
      for (int b = 0; b < m && deficit[a] > 0; ++b) {
        if (b == a || inside.has_edge(a, b) || (pass == 0) != static_cast<bool>(never_deficient[b])) continue;
        inside.add_edge(a, b);
        --deficit[a];
        if (deficit[b] > 0) --deficit[b];
      }
    }
  }

  Graph final_edges = apply_toggles(inst.graph, fix.toggles);
  copy_inside(final_edges, inside, members);
  Solution sol = make_solution(inst, std::move(final_edges), StrategyProfile::from_set(n, members));
  return detail::settle(inst, std::move(sol), stats, opts);
}

}  // namespace bnpg
