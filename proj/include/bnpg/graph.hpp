#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bnpg {

/// Unordered vertex pair stored with first < second.
using Edge = std::pair<int, int>;

/// Normalizes (a, b) so the smaller index comes first. Throws
/// std::invalid_argument for a loop.
Edge make_edge(int a, int b);

/// Simple, undirected, loop-free graph on vertices {0, ..., n-1}.
class Graph {
 public:
  explicit Graph(int n = 0);
  Graph(int n, std::span<const Edge> edges);

  int size() const { return n_; }

  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  void set_edge(int i, int j, bool present);

  int degree(int i) const;
  std::vector<int> neighbors(int i) const;

  /// All edges, lexicographically sorted.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const { return edge_count_; }

  /// Subgraph induced by `nodes`, relabelled 0..nodes.size()-1 in the given order.
  Graph induced(std::span<const int> nodes) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  void check(int i) const;
  std::size_t slot(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  int n_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::uint8_t> adj_;
};

/// E xor E' as a sorted pair list. Both graphs must have the same size.
std::vector<Edge> symmetric_difference(const Graph& a, const Graph& b);

/// All unordered pairs over {0, ..., n-1}, lexicographically sorted.
std::vector<Edge> all_pairs(int n);

}  // namespace bnpg
