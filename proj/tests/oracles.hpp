#pragma once

// Reference implementations for tests. Each one is written from the
// definitions by plain enumeration and shares no algorithmic code with the
// library; only the basic value types (Graph, DegreeSet, DesignInstance) are
// reused.

#include "bnpg/instance.hpp"
#include "bnpg/matching.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using bnpg::Cost;
using bnpg::DegreeSet;
using bnpg::DesignInstance;
using bnpg::Graph;
using bnpg::Rational;

inline int uniform(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline std::vector<int> members_of(std::uint64_t mask, int n) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if ((mask >> v) & 1) out.push_back(v);
  }
  return out;
}

inline int count_in(const Graph& g, int v, std::uint64_t mask) {
  int c = 0;
  for (int u = 0; u < g.size(); ++u) {
    if (u != v && ((mask >> u) & 1) && g.has_edge(u, v)) ++c;
  }
  return c;
}

/// Every investing set whose profile is an equilibrium, sorted.
inline std::vector<std::vector<int>> psne_sets(const Graph& g, const std::vector<DegreeSet>& d) {
  const int n = g.size();
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int v = 0; v < n && ok; ++v) {
      bool invests = (mask >> v) & 1;
      bool in_d = std::find(d[v].members().begin(), d[v].members().end(), count_in(g, v, mask)) != d[v].members().end();
      ok = invests == in_d;
    }
    if (ok) out.push_back(members_of(mask, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool independent(const Graph& g, std::uint64_t mask) {
  for (int a = 0; a < g.size(); ++a) {
    for (int b = a + 1; b < g.size(); ++b) {
      if (((mask >> a) & 1) && ((mask >> b) & 1) && g.has_edge(a, b)) return false;
    }
  }
  return true;
}

/// Maximal independent sets (no vertex can be added), sorted.
inline std::vector<std::vector<int>> maximal_independent_sets(const Graph& g) {
  const int n = g.size();
  std::vector<std::vector<int>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (!independent(g, mask)) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v) {
      if (!((mask >> v) & 1) && independent(g, mask | (std::uint64_t{1} << v))) maximal = false;
    }
    if (maximal) out.push_back(members_of(mask, n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_independent_set(const Graph& g, int k) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    if (__builtin_popcountll(mask) >= k && independent(g, mask)) return true;
  }
  return false;
}

inline bool has_clique(const Graph& g, int k) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    if (__builtin_popcountll(mask) != k) continue;
    bool ok = true;
    for (int a = 0; a < g.size() && ok; ++a) {
      for (int b = a + 1; b < g.size() && ok; ++b) {
        if (((mask >> a) & 1) && ((mask >> b) & 1) && !g.has_edge(a, b)) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

inline std::vector<int> some_clique(const Graph& g, int k) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    if (__builtin_popcountll(mask) != k) continue;
    auto m = members_of(mask, g.size());
    bool ok = true;
    for (std::size_t a = 0; a < m.size() && ok; ++a) {
      for (std::size_t b = a + 1; b < m.size() && ok; ++b) ok = g.has_edge(m[a], m[b]);
    }
    if (ok) return m;
  }
  return {};
}

inline bool has_vertex_cover(const Graph& g, int k) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.size()); ++mask) {
    if (__builtin_popcountll(mask) > k) continue;
    bool ok = true;
    for (auto [a, b] : g.edges()) {
      if (!((mask >> a) & 1) && !((mask >> b) & 1)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

/// Size of a maximum matching, ignoring weights, by recursion.
inline int max_matching_size(const bnpg::WeightedGraph& g) {
  const int n = g.node_count();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) adj[e.u][e.v] = adj[e.v][e.u] = 1;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, int from) -> int {
    int a = from;
    while (a < n && used[a]) ++a;
    if (a >= n) return 0;
    used[a] = 1;
    int best = self(self, a + 1);  // a stays unmatched
    for (int b = a + 1; b < n; ++b) {
      if (used[b] || !adj[a][b]) continue;
      used[b] = 1;
      best = std::max(best, 1 + self(self, a + 1));
      used[b] = 0;
    }
    used[a] = 0;
    return best;
  };
  return rec(rec, 0);
}

/// Cost of a matching given as pairs, or nullopt if some pair is not an edge.
inline std::optional<std::int64_t> matching_cost(const bnpg::WeightedGraph& g,
                                                 const std::vector<std::pair<int, int>>& pairs) {
  std::int64_t total = 0;
  for (auto [a, b] : pairs) {
    bool found = false;
    for (const auto& e : g.edges()) {
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) {
        total += e.weight;
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return total;
}

inline bool in_class(const bnpg::TargetClass& t, std::uint64_t mask, int n) {
  if (std::holds_alternative<bnpg::target::All>(t)) return mask == (std::uint64_t{1} << n) - 1;
  if (const auto* e = std::get_if<bnpg::target::ExactSet>(&t)) return members_of(mask, n) == e->members;
  if (const auto* s = std::get_if<bnpg::target::SupersetOf>(&t)) {
    for (int i : s->members) {
      if (!((mask >> i) & 1)) return false;
    }
    return true;
  }
  return __builtin_popcountll(mask) >= std::get<bnpg::target::AtLeast>(t).r;
}

/// Minimum modification cost over every edge set and every investing set of
/// the target class; nullopt when nothing works. Plain enumeration of all
/// 2^(n(n-1)/2) edge sets, so n <= 5.
inline std::optional<Rational> design_min_cost(const DesignInstance& inst) {
  const int n = inst.size();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::uint64_t> classes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (in_class(inst.target, mask, n)) classes.push_back(mask);
  }
  std::optional<Rational> best;
  for (std::uint64_t es = 0; es < (std::uint64_t{1} << pairs.size()); ++es) {
    Graph g(n);
    Rational cost(0);
    bool allowed = true;
    for (std::size_t p = 0; p < pairs.size() && allowed; ++p) {
      auto [i, j] = pairs[p];
      bool present = (es >> p) & 1;
      if (present) g.add_edge(i, j);
      if (present != inst.graph.has_edge(i, j)) {
        const Cost& c = inst.costs.at(i, j);
        if (c.is_infinite()) {
          allowed = false;
        } else {
          cost += c.value();
        }
      }
    }
    if (!allowed || (best && cost >= *best)) continue;
    for (std::uint64_t mask : classes) {
      bool ok = true;
      for (int v = 0; v < n && ok; ++v) {
        bool invests = (mask >> v) & 1;
        const auto& m = inst.degsets[v].members();
        ok = invests == (std::find(m.begin(), m.end(), count_in(g, v, mask)) != m.end());
      }
      if (ok) {
        best = cost;
        break;
      }
    }
  }
  return best;
}

/// Random instance with interval degree sets on [0, n-1] and pair costs drawn
/// from {0, 1, 2, inf}.
inline DesignInstance random_interval_instance(std::mt19937_64& rng, int n) {
  DesignInstance inst;
  inst.graph = Graph(n);
  int density = uniform(rng, 0, 100);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (uniform(rng, 0, 99) < density) inst.graph.add_edge(i, j);
    }
  }
  for (int i = 0; i < n; ++i) {
    int lo = uniform(rng, 0, n - 1);
    int hi = uniform(rng, lo, n - 1);
    inst.degsets.push_back(DegreeSet::interval(lo, hi, n));
  }
  inst.costs = bnpg::CostMatrix(inst.graph);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int c = uniform(rng, 0, 3);
      inst.costs.set(i, j, c == 3 ? Cost::infinity() : Cost(c));
    }
  }
  int b = uniform(rng, 0, 4);
  inst.budget = b == 4 ? Cost::infinity() : Cost(b);
  inst.target = bnpg::target::All{};
  return inst;
}

/// A nonempty proper subset of {0..n-1}, sorted.
inline std::vector<int> random_proper_subset(std::mt19937_64& rng, int n) {
  std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::uint64_t mask = 0;
  while (mask == 0 || mask == full) mask = rng() & full;
  return members_of(mask, n);
}

/// Canonical form of a graph on n <= 6 vertices: smallest adjacency bit
/// string over all vertex permutations.
inline std::uint64_t canonical_code(const Graph& g) {
  const int n = g.size();
  std::vector<int> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = v;
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    int bit = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j, ++bit) {
        if (g.has_edge(perm[i], perm[j])) code |= std::uint64_t{1} << bit;
      }
    }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// One graph per isomorphism class, for every vertex count 1..max_n.
inline std::vector<Graph> graph_representatives(int max_n) {
  std::vector<Graph> out;
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    std::vector<std::uint64_t> seen;
    for (std::uint64_t es = 0; es < (std::uint64_t{1} << pairs.size()); ++es) {
      Graph g(n);
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if ((es >> p) & 1) g.add_edge(pairs[p].first, pairs[p].second);
      }
      std::uint64_t code = canonical_code(g);
      if (std::find(seen.begin(), seen.end(), code) != seen.end()) continue;
      seen.push_back(code);
      out.push_back(g);
    }
  }
  return out;
}

}  // namespace oracle
