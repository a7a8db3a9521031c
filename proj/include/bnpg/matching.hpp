#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bnpg {

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

/// Simple undirected graph with nonnegative integer edge weights.
class WeightedGraph {
 public:
  explicit WeightedGraph(int node_count = 0) : node_count_(node_count) {}

  /// Throws std::invalid_argument on a loop, an out-of-range endpoint, a
  /// negative weight or a duplicate pair.
  void add_edge(int u, int v, std::int64_t weight);

  int node_count() const { return node_count_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

 private:
  int node_count_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::pair<int, int>> seen_;  // sorted, for duplicate detection
};

struct PerfectMatching {
  std::vector<std::pair<int, int>> pairs;  // (a, b) with a < b, sorted
  std::int64_t total_cost = 0;

  friend bool operator==(const PerfectMatching&, const PerfectMatching&) = default;
};

/// Minimum-cost perfect matching via an O(V^3) primal-dual blossom method.
/// Returns nullopt when no perfect matching exists. Deterministic for a given
/// edge list, but among several optima no particular one is promised.
std::optional<PerfectMatching> min_cost_perfect_matching(const WeightedGraph& g);

inline constexpr int kBruteForceMatchingLimit = 12;

/// Exhaustive recursion over pairings. Among optimal matchings the
/// lexicographically smallest sorted pair list is returned. Throws
/// LimitExceeded above `limit` nodes.
std::optional<PerfectMatching> brute_force_matching(const WeightedGraph& g, int limit = kBruteForceMatchingLimit);

}  // namespace bnpg
