#include "bnpg/error.hpp"
#include "bnpg/solver.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bnpg;

namespace {

DesignInstance two_isolated() {
  DesignInstance inst;
  inst.graph = Graph(2);
  inst.degsets = {DegreeSet({1}, 2), DegreeSet({1}, 2)};
  inst.costs = CostMatrix(inst.graph);
  inst.budget = Cost(1);
  return inst;
}

DesignInstance upward(const Graph& g, const std::vector<int>& thresholds, const std::vector<int>& s) {
  const int n = g.size();
  DesignInstance inst;
  inst.graph = g;
  for (int i = 0; i < n; ++i) inst.degsets.push_back(DegreeSet::interval(thresholds[i], n - 1, n));
  inst.costs = CostMatrix(g, Cost(1), Cost::infinity());
  inst.budget = Cost::infinity();
  inst.target = target::ExactSet{s};
  return inst;
}

// Adds an edge between deficient players in the order given by `order`
// (pairs tried first to last), then pads every leftover deficit with edges
// to the lowest-indexed non-adjacent player. Order dependent on purpose.
int first_fit_additions(Graph g, const std::vector<int>& threshold, const std::vector<Edge>& order) {
  auto deficit = [&](int v) { return std::max(0, threshold[v] - g.degree(v)); };
  int added = 0;
  for (auto [a, b] : order) {
    if (deficit(a) > 0 && deficit(b) > 0 && !g.has_edge(a, b)) {
      g.add_edge(a, b);
      ++added;
    }
  }
  for (int v = 0; v < g.size(); ++v) {
    for (int u = 0; u < g.size() && deficit(v) > 0; ++u) {
      if (u != v && !g.has_edge(u, v)) {
        g.add_edge(u, v);
        ++added;
      }
    }
  }
  return added;
}

SolveOptions wide() {
  SolveOptions o;
  o.oracle_limit = 10;
  o.paranoid = true;
  return o;
}

}  // namespace

TEST(SolveAll, Examples) {
  SolveOutcome a = solve_all(two_isolated(), wide());
  ASSERT_TRUE(a.feasible());
  EXPECT_EQ(a.best()->added, (std::vector<Edge>{{0, 1}}));
  EXPECT_EQ(a.min_cost(), Rational(1));
  EXPECT_EQ(a.stats.path, SolverPath::gadget);

  DesignInstance single;
  single.graph = Graph(2, std::vector<Edge>{{0, 1}});
  single.degsets = {DegreeSet({0}, 2), DegreeSet({0}, 2)};
  single.costs = CostMatrix(single.graph, Cost(1), Cost(3));
  single.budget = Cost(2);
  SolveOutcome b = solve_all(single, wide());
  ASSERT_TRUE(std::holds_alternative<outcome::InfeasibleWithinBudget>(b.status));
  EXPECT_EQ(std::get<outcome::InfeasibleWithinBudget>(b.status).min_cost, Rational(3));

  DesignInstance fine = two_isolated();
  fine.graph = Graph(2, std::vector<Edge>{{0, 1}});
  fine.costs = CostMatrix(fine.graph);
  fine.budget = Cost(0);
  SolveOutcome c = solve_all(fine, wide());
  ASSERT_TRUE(c.feasible());
  EXPECT_TRUE(c.best()->added.empty());
  EXPECT_TRUE(c.best()->removed.empty());
}

TEST(SolveAll, EmptyDegreeSetIsStructurallyInfeasible) {
  DesignInstance inst = two_isolated();
  inst.degsets[0] = DegreeSet({}, 2);
  SolveOutcome out = solve_all(inst);
  ASSERT_TRUE(std::holds_alternative<outcome::StructurallyInfeasible>(out.status));
  EXPECT_NE(std::get<outcome::StructurallyInfeasible>(out.status).reason.find("empty degree set"), std::string::npos);
}

TEST(SolveAll, ProhibitedPairMakesItInfeasible) {
  DesignInstance inst = two_isolated();
  inst.costs.set(0, 1, Cost::infinity());
  EXPECT_TRUE(std::holds_alternative<outcome::StructurallyInfeasible>(solve_all(inst).status));
}

TEST(SolveAll, MinimumDoesNotDependOnBudget) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    DesignInstance inst = oracle::random_interval_instance(rng, oracle::uniform(rng, 2, 7));
    inst.budget = Cost::infinity();
    SolveOutcome free = solve_all(inst, wide());
    for (int b = 0; b <= 4; ++b) {
      inst.budget = Cost(b);
      SolveOutcome capped = solve_all(inst, wide());
      EXPECT_EQ(capped.min_cost(), free.min_cost());
      if (free.min_cost()) EXPECT_EQ(capped.feasible(), *free.min_cost() <= Rational(b));
    }
  }
}

TEST(SolveAll, SolvedGraphIsAFixedPoint) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    DesignInstance inst = oracle::random_interval_instance(rng, oracle::uniform(rng, 2, 7));
    SolveOutcome out = solve_all(inst, wide());
    if (!out.best()) continue;
    DesignInstance again = inst;
    again.graph = out.best()->final_edges;
    again.costs = CostMatrix(again.graph, Cost(1), Cost(1));
    again.budget = Cost(0);
    SolveOutcome second = solve_all(again, wide());
    ASSERT_TRUE(second.feasible());
    EXPECT_EQ(second.min_cost(), Rational(0));
  }
}

TEST(SolveExactSet, StarExample) {
  DesignInstance inst;
  inst.graph = Graph(3, std::vector<Edge>{{0, 1}, {0, 2}});
  inst.degsets = {DegreeSet({2}, 3), DegreeSet({1}, 3), DegreeSet({1}, 3)};
  inst.costs = CostMatrix(inst.graph);
  inst.budget = Cost(2);
  inst.target = target::ExactSet{{1, 2}};
  SolveOutcome out = solve_exact_set(inst, wide());
  ASSERT_TRUE(out.feasible());
  EXPECT_EQ(out.min_cost(), Rational(2));
  ASSERT_TRUE(out.stats.phase1_cost);
  EXPECT_EQ(*out.stats.phase1_cost, Rational(1));
  EXPECT_EQ(out.best()->added, (std::vector<Edge>{{1, 2}}));
  EXPECT_EQ(out.best()->removed.size(), 1u);
  EXPECT_EQ(solve_oracle(inst).min_cost(), Rational(2));
  EXPECT_EQ(oracle::design_min_cost(inst), Rational(2));
}

TEST(SolveExactSet, OutsiderAlreadyOutsideCostsNothing) {
  DesignInstance inst;
  inst.graph = Graph(3, std::vector<Edge>{{1, 2}});
  inst.degsets = {DegreeSet({2}, 3), DegreeSet({1}, 3), DegreeSet({1}, 3)};
  inst.costs = CostMatrix(inst.graph);
  inst.budget = Cost(0);
  inst.target = target::ExactSet{{1, 2}};
  SolveOutcome out = solve_exact_set(inst, wide());
  ASSERT_TRUE(out.feasible());
  EXPECT_EQ(*out.stats.phase1_cost, Rational(0));
}

TEST(SolveExactSet, WholeSetMatchesSolveAll) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 100; ++t) {
    DesignInstance inst = oracle::random_interval_instance(rng, oracle::uniform(rng, 2, 7));
    std::vector<int> everyone(inst.size());
    for (int i = 0; i < inst.size(); ++i) everyone[i] = i;
    DesignInstance exact = inst;
    exact.target = target::ExactSet{everyone};
    SolveOutcome a = solve_all(inst, wide());
    SolveOutcome b = solve_exact_set(exact, wide());
    EXPECT_EQ(a.min_cost(), b.min_cost());
    EXPECT_EQ(a.status.index(), b.status.index());
  }
}

TEST(SolveExactSet, CrossFixIgnoresPairsInsideAndOutside) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 100; ++t) {
    int n = oracle::uniform(rng, 3, 6);
    DesignInstance inst = oracle::random_interval_instance(rng, n);
    auto s = oracle::random_proper_subset(rng, n);
    inst.target = target::ExactSet{s};
    SolveOutcome base = solve_exact_set(inst, wide());
    if (!base.stats.phase1_cost) continue;
    DesignInstance changed = inst;
    auto inside = [&](int v) { return std::binary_search(s.begin(), s.end(), v); };
    for (auto [i, j] : all_pairs(n)) {
      if (inside(i) == inside(j)) changed.costs.set(i, j, Cost(oracle::uniform(rng, 0, 5)));
    }
    SolveOutcome other = solve_exact_set(changed, wide());
    ASSERT_TRUE(other.stats.phase1_cost);
    EXPECT_EQ(*other.stats.phase1_cost, *base.stats.phase1_cost);
  }
}

TEST(UnitConvexFast, Examples) {
  // two deficient members, not adjacent
  DesignInstance pair = upward(Graph(3), {1, 1, 1}, {0, 1});
  SolveOutcome a = solve_unit_convex_fast(pair, wide());
  ASSERT_TRUE(a.feasible());
  EXPECT_EQ(a.min_cost(), Rational(1));
  EXPECT_EQ(a.best()->added, (std::vector<Edge>{{0, 1}}));

  // one member short by two, the others satisfied
  DesignInstance lone = upward(Graph(4), {2, 0, 0, 3}, {0, 1, 2});
  SolveOutcome b = solve_unit_convex_fast(lone, wide());
  ASSERT_TRUE(b.feasible());
  EXPECT_EQ(b.min_cost(), Rational(2));

  DesignInstance none = upward(Graph(3, std::vector<Edge>{{0, 1}}), {1, 1, 2}, {0, 1});
  SolveOutcome c = solve_unit_convex_fast(none, wide());
  ASSERT_TRUE(c.feasible());
  EXPECT_EQ(c.min_cost(), Rational(0));
}

TEST(UnitConvexFast, OrderDependentGreedyIsNotOptimal) {
  // a=0, b=1, c=2, d=3 with edges ac, ad, bd, each one edge short
  Graph g(4, std::vector<Edge>{{0, 2}, {0, 3}, {1, 3}});
  std::vector<int> threshold = {3, 2, 2, 3};
  DesignInstance inst = upward(g, threshold, {0, 1, 2, 3});
  EXPECT_EQ(first_fit_additions(g, threshold, {{1, 2}, {0, 1}, {2, 3}}), 3);
  EXPECT_EQ(first_fit_additions(g, threshold, {{0, 1}, {2, 3}}), 2);
  EXPECT_EQ(oracle::design_min_cost(inst), Rational(2));
  EXPECT_EQ(solve_unit_convex_fast(inst, wide()).min_cost(), Rational(2));
  EXPECT_EQ(solve_exact_set(inst, wide()).min_cost(), Rational(2));
}

TEST(UnitConvexFast, RejectsOutsidePreconditions) {
  DesignInstance inst = upward(Graph(3), {1, 1, 1}, {0, 1});
  inst.degsets[0] = DegreeSet({1}, 3);
  EXPECT_THROW(solve_unit_convex_fast(inst), InvalidInstance);
  inst = upward(Graph(3), {1, 1, 1}, {0, 1});
  inst.costs.set(0, 1, Cost(2));
  EXPECT_THROW(solve_unit_convex_fast(inst), InvalidInstance);
}

TEST(Oracle, Examples) {
  Graph tri(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}});
  DesignInstance inst;
  inst.graph = tri;
  inst.degsets.assign(3, DegreeSet({0}, 3));
  inst.costs = CostMatrix(tri, Cost::infinity(), Cost::infinity());
  inst.budget = Cost(0);
  inst.target = target::AtLeast{2};
  EXPECT_TRUE(std::holds_alternative<outcome::StructurallyInfeasible>(solve_oracle(inst).status));

  inst.target = target::SupersetOf{{}};
  SolveOutcome any = solve_oracle(inst);
  ASSERT_TRUE(any.feasible());
  EXPECT_EQ(any.best()->investing.investor_count(), 1);
}

TEST(Oracle, PsneExistenceWithZeroBudget) {
  std::mt19937_64 rng(14);
  for (int t = 0; t < 100; ++t) {
    int n = oracle::uniform(rng, 1, 5);
    DesignInstance inst;
    inst.graph = Graph(n);
    for (auto [i, j] : all_pairs(n)) {
      if (rng() & 1) inst.graph.add_edge(i, j);
    }
    for (int i = 0; i < n; ++i) {
      std::vector<int> m;
      for (int z = 0; z < n; ++z) {
        if (rng() & 1) m.push_back(z);
      }
      inst.degsets.emplace_back(m, n);
    }
    inst.costs = CostMatrix(inst.graph, Cost::infinity(), Cost::infinity());
    inst.target = target::SupersetOf{{}};
    bool exists = !oracle::psne_sets(inst.graph, inst.degsets).empty();
    EXPECT_EQ(solve_oracle(inst).feasible(), exists);
  }
}

TEST(Oracle, MatchesPlainEnumerationOnEveryTargetClass) {
  std::mt19937_64 rng(15);
  for (int t = 0; t < 300; ++t) {
    int n = oracle::uniform(rng, 1, 4);
    DesignInstance inst = oracle::random_interval_instance(rng, n);
    for (int i = 0; i < n; ++i) {
      if (rng() % 3 == 0) {
        std::vector<int> m;
        for (int z = 0; z < n; ++z) {
          if (rng() & 1) m.push_back(z);
        }
        inst.degsets[i] = DegreeSet(m, n);
      }
    }
    if (n > 1 && (rng() & 1)) inst.costs.set(0, n - 1, Cost(Rational(1, 2)));
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (rng() & 1) subset.push_back(i);
    }
    switch (t % 4) {
      case 0: inst.target = target::All{}; break;
      case 1: inst.target = target::ExactSet{subset}; break;
      case 2: inst.target = target::SupersetOf{subset}; break;
      default: inst.target = target::AtLeast{oracle::uniform(rng, 0, n)}; break;
    }
    SolveOutcome out = solve_oracle(inst, wide());
    EXPECT_EQ(out.min_cost(), oracle::design_min_cost(inst)) << "trial " << t;
  }
}

TEST(Oracle, LimitIsEnforced) {
  DesignInstance inst;
  inst.graph = Graph(7);
  inst.degsets.assign(7, DegreeSet({0}, 7));
  inst.costs = CostMatrix(inst.graph);
  EXPECT_THROW(solve_oracle(inst), LimitExceeded);
  SolveOptions big;
  big.oracle_limit = 7;
  EXPECT_TRUE(solve_oracle(inst, big).feasible());
}

TEST(Solve, Dispatch) {
  DesignInstance inst = two_isolated();
  EXPECT_EQ(solve(inst).stats.path, SolverPath::gadget);
  EXPECT_EQ(solve(inst, SolverKind::oracle).stats.path, SolverPath::oracle);
  inst.target = target::ExactSet{{0, 1}};
  EXPECT_EQ(solve(inst).stats.path, SolverPath::exact_set);
  inst.target = target::AtLeast{1};
  EXPECT_EQ(solve(inst).stats.path, SolverPath::oracle);
  EXPECT_THROW(solve(inst, SolverKind::gadget), InvalidInstance);
}

TEST(WriteOutcome, StatusFields) {
  std::string text = write_outcome(solve(two_isolated()));
  EXPECT_NE(text.find("\"status\": \"feasible\""), std::string::npos) << text;
  EXPECT_NE(text.find("\"solver\": \"gadget\""), std::string::npos) << text;
}
