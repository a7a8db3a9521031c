#include "bnpg/error.hpp"
#include "bnpg/game.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace bnpg;

namespace {

Graph triangle() { return Graph(3, std::vector<Edge>{{0, 1}, {0, 2}, {1, 2}}); }

std::vector<Rational> ints(std::initializer_list<int> xs) {
  std::vector<Rational> out;
  for (int x : xs) out.emplace_back(x);
  return out;
}

std::vector<std::vector<int>> as_sets(const std::vector<StrategyProfile>& ps) {
  std::vector<std::vector<int>> out;
  for (const auto& p : ps) out.push_back(p.investing_set());
  return out;
}

}  // namespace

TEST(NeighborInvestors, Counts) {
  EXPECT_EQ(neighbor_investors(triangle(), StrategyProfile(3, true), 0), 2);
  Graph empty(4);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(neighbor_investors(empty, StrategyProfile(4, true), i), 0);
  Graph path(3, std::vector<Edge>{{0, 1}, {1, 2}});
  EXPECT_EQ(neighbor_investors(path, StrategyProfile::from_set(3, std::vector<int>{0, 2}), 1), 2);
}

TEST(NeighborInvestors, RejectsBadInput) {
  EXPECT_THROW(neighbor_investors(triangle(), StrategyProfile(3), 3), std::out_of_range);
  EXPECT_THROW(neighbor_investors(triangle(), StrategyProfile(2), 0), std::invalid_argument);
}

TEST(DeriveDegreeSet, Examples) {
  DegreeSet best_shot = derive_degree_set(UtilityTable(ints({0, 2, 2, 2, 2}), Rational(1)));
  EXPECT_EQ(best_shot.members(), std::vector<int>{0});
  EXPECT_EQ(best_shot.shape(), DegreeShape::concave);

  EXPECT_TRUE(derive_degree_set(UtilityTable(ints({0, 0, 0, 0, 0}), Rational(1))).empty());

  DegreeSet mid = derive_degree_set(UtilityTable(ints({0, 1, 3, 6, 6, 6}), Rational(2)));
  EXPECT_EQ(mid.members(), (std::vector<int>{1, 2}));
  EXPECT_EQ(mid.shape(), DegreeShape::sigmoid);
}

TEST(DeriveDegreeSet, TieGoesToInvesting) {
  // gain exactly equal to the cost counts
  DegreeSet d = derive_degree_set(UtilityTable(ints({0, 3, 4}), Rational(3)));
  EXPECT_EQ(d.members(), std::vector<int>{0});
}

TEST(UtilityTable, RejectsBadTables) {
  EXPECT_THROW(UtilityTable({}, Rational(1)), std::invalid_argument);
  EXPECT_THROW(UtilityTable(ints({0, 2, 1}), Rational(1)), std::invalid_argument);
  EXPECT_THROW(UtilityTable(ints({-1, 0}), Rational(1)), std::invalid_argument);
  EXPECT_THROW(UtilityTable(ints({0, 1}), Rational(-1)), std::invalid_argument);
}

TEST(UtilityTable, Utility) {
  UtilityTable u(ints({0, 2, 4, 4}), Rational(1));
  EXPECT_EQ(u.utility(false, 1), Rational(2));
  EXPECT_EQ(u.utility(true, 1), Rational(3));
}

TEST(RealizeDegreeSet, Examples) {
  UtilityTable a = realize_degree_set(DegreeSet({0, 1}, 4), 4);
  EXPECT_EQ(a.values(), ints({0, 2, 4, 4, 4}));
  EXPECT_EQ(a.invest_cost(), Rational(1));

  UtilityTable b = realize_degree_set(DegreeSet({}, 3), 3);
  EXPECT_EQ(b.values(), ints({0, 0, 0, 0}));

  // tables carry n+1 entries, so the five-entry table belongs to n=4
  UtilityTable c = realize_degree_set(DegreeSet({2, 3}, 4), 4);
  EXPECT_EQ(c.values(), ints({0, 0, 0, 2, 4}));
  DegreeSet back = derive_degree_set(c);
  EXPECT_EQ(back.members(), (std::vector<int>{2, 3}));
  EXPECT_EQ(back.shape(), DegreeShape::convex);
}

TEST(RealizeDegreeSet, RejectsOutOfRange) {
  EXPECT_THROW(realize_degree_set(DegreeSet({4}, 4), 4), std::out_of_range);
}

TEST(DegreeSet, ShapeScanOrder) {
  EXPECT_EQ(DegreeSet({}, 4).shape(), DegreeShape::concave);
  EXPECT_EQ(DegreeSet({0}, 4).shape(), DegreeShape::concave);
  EXPECT_EQ(DegreeSet({3}, 4).shape(), DegreeShape::convex);
  EXPECT_EQ(DegreeSet({0, 1, 2, 3}, 4).shape(), DegreeShape::concave);
  EXPECT_EQ(DegreeSet({1, 2}, 4).shape(), DegreeShape::sigmoid);
  EXPECT_EQ(DegreeSet({0, 2}, 4).shape(), DegreeShape::general);
}

TEST(DegreeSet, LiteralMembersBeyondRangeAreClampedForShape) {
  DegreeSet d({2, 3, 9}, 4);
  EXPECT_EQ(d.members(), (std::vector<int>{2, 3, 9}));
  EXPECT_EQ(d.shape(), DegreeShape::convex);
  EXPECT_EQ(d.clamped(4).members(), (std::vector<int>{2, 3}));
}

TEST(BestResponse, Examples) {
  DegreeSet zero({0}, 4);
  EXPECT_TRUE(is_best_response(zero, true, 0));
  EXPECT_FALSE(is_best_response(zero, true, 1));
  EXPECT_TRUE(is_best_response(DegreeSet({1, 2}, 5), false, 3));
}

TEST(IsPsne, Examples) {
  Graph empty(3);
  std::vector<DegreeSet> zeros(3, DegreeSet({0}, 3));
  EXPECT_TRUE(is_psne(empty, zeros, StrategyProfile(3, true)).ok);

  EXPECT_TRUE(is_psne(triangle(), zeros, StrategyProfile::from_set(3, std::vector<int>{0})).ok);
  PsneCheck two = is_psne(triangle(), zeros, StrategyProfile::from_set(3, std::vector<int>{0, 1}));
  EXPECT_FALSE(two.ok);
  EXPECT_EQ(two.violators, (std::vector<int>{0, 1}));
}

TEST(IsPsne, StarMatchesEnumerator) {
  // center 0, leaves 1 and 2; D_center = {2}, D_leaf = {1}
  Graph star(3, std::vector<Edge>{{0, 1}, {0, 2}});
  std::vector<DegreeSet> d = {DegreeSet({2}, 3), DegreeSet({1}, 3), DegreeSet({1}, 3)};
  auto all = oracle::psne_sets(star, d);
  bool expected = std::find(all.begin(), all.end(), std::vector<int>{0, 1, 2}) != all.end();
  EXPECT_TRUE(expected);
  EXPECT_EQ(is_psne(star, d, StrategyProfile(3, true)).ok, expected);
}

TEST(EnumeratePsne, Examples) {
  std::vector<DegreeSet> zeros3(3, DegreeSet({0}, 3));
  EXPECT_EQ(as_sets(enumerate_psne(triangle(), zeros3)),
            (std::vector<std::vector<int>>{{0}, {1}, {2}}));

  std::vector<DegreeSet> zeros2(2, DegreeSet({0}, 2));
  EXPECT_EQ(as_sets(enumerate_psne(Graph(2), zeros2)), (std::vector<std::vector<int>>{{0, 1}}));

  Graph c4(4, std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  std::vector<DegreeSet> zeros4(4, DegreeSet({0}, 4));
  EXPECT_EQ(as_sets(enumerate_psne(c4, zeros4)), (std::vector<std::vector<int>>{{0, 2}, {1, 3}}));
}

TEST(EnumeratePsne, LimitIsEnforced) {
  std::vector<DegreeSet> d(5, DegreeSet({0}, 5));
  EXPECT_THROW(enumerate_psne(Graph(5), d, 4), LimitExceeded);
}

TEST(EnumeratePsne, MatchesNaiveEnumerationOnRandomGames) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int n = oracle::uniform(rng, 1, 6);
    Graph g(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng() & 1) g.add_edge(i, j);
      }
    }
    std::vector<DegreeSet> d;
    for (int i = 0; i < n; ++i) {
      std::vector<int> m;
      for (int z = 0; z < n; ++z) {
        if (rng() & 1) m.push_back(z);
      }
      d.emplace_back(m, n);
    }
    EXPECT_EQ(as_sets(enumerate_psne(g, d)), oracle::psne_sets(g, d));
  }
}

TEST(ShapeSoundness, DerivativeShapeFollowsLabel) {
  for (int n = 1; n <= 7; ++n) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      DegreeSet d(oracle::members_of(mask, n), n);
      if (d.shape() == DegreeShape::general) continue;
      UtilityTable table = realize_degree_set(d, n);
      const auto& v = table.values();
      std::vector<Rational> delta;
      for (int z = 0; z < n; ++z) delta.push_back(v[z + 1] - v[z]);
      bool up = std::is_sorted(delta.begin(), delta.end());
      bool down = std::is_sorted(delta.rbegin(), delta.rend());
      auto peak = std::max_element(delta.begin(), delta.end());
      bool unimodal = std::is_sorted(delta.begin(), peak + 1) && std::is_sorted(delta.rbegin(), std::make_reverse_iterator(peak));
      switch (d.shape()) {
        case DegreeShape::concave: EXPECT_TRUE(down) << n << ":" << mask; break;
        case DegreeShape::convex: EXPECT_TRUE(up) << n << ":" << mask; break;
        case DegreeShape::sigmoid: EXPECT_TRUE(unimodal) << n << ":" << mask; break;
        default: break;
      }
    }
  }
}
