#include "bnpg/graph.hpp"

#include <stdexcept>
#include <string>

namespace bnpg {

Edge make_edge(int a, int b) {
  if (a == b) throw std::invalid_argument("loop (" + std::to_string(a) + "," + std::to_string(b) + ")");
  return a < b ? Edge{a, b} : Edge{b, a};
}

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  adj_.assign(static_cast<std::size_t>(n) * n, 0);
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  for (auto [a, b] : edges) add_edge(a, b);
}

void Graph::check(int i) const {
  if (i < 0 || i >= n_) {
    throw std::out_of_range("vertex " + std::to_string(i) + " out of range for n=" + std::to_string(n_));
  }
}

bool Graph::has_edge(int i, int j) const {
  check(i);
  check(j);
  return adj_[slot(i, j)] != 0;
}

void Graph::set_edge(int i, int j, bool present) {
  check(i);
  check(j);
  if (i == j) throw std::invalid_argument("loop at vertex " + std::to_string(i));
  auto& cell = adj_[slot(i, j)];
  if ((cell != 0) == present) return;
  cell = present;
  adj_[slot(j, i)] = present;
  if (present) {
    ++edge_count_;
  } else {
    --edge_count_;
  }
}

void Graph::add_edge(int i, int j) { set_edge(i, j, true); }
void Graph::remove_edge(int i, int j) { set_edge(i, j, false); }

int Graph::degree(int i) const {
  check(i);
  int d = 0;
  for (int j = 0; j < n_; ++j) d += adj_[slot(i, j)];
  return d;
}

std::vector<int> Graph::neighbors(int i) const {
  check(i);
  std::vector<int> out;
  for (int j = 0; j < n_; ++j) {
    if (adj_[slot(i, j)]) out.push_back(j);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      if (adj_[slot(i, j)]) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const int> nodes) const {
  Graph sub(static_cast<int>(nodes.size()));
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < nodes.size(); ++b) {
      if (has_edge(nodes[a], nodes[b])) sub.add_edge(static_cast<int>(a), static_cast<int>(b));
    }
  }
  return sub;
}

std::vector<Edge> symmetric_difference(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) throw std::invalid_argument("graph size mismatch");
  std::vector<Edge> out;
  for (int i = 0; i < a.size(); ++i) {
    for (int j = i + 1; j < a.size(); ++j) {
      if (a.has_edge(i, j) != b.has_edge(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

}  // namespace bnpg
