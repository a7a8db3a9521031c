#include "bnpg/reductions.hpp"

#include "bnpg/error.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <functional>
#include <random>
#include <stdexcept>

namespace bnpg {

std::string_view to_string(ReductionKind kind) {
  switch (kind) {
    case ReductionKind::independent_set: return "is";
    case ReductionKind::clique: return "clique";
    case ReductionKind::vertex_cover: return "vc";
  }
  return "is";
}

ReductionKind parse_reduction_kind(std::string_view text) {
  if (text == "is") return ReductionKind::independent_set;
  if (text == "clique") return ReductionKind::clique;
  if (text == "vc") return ReductionKind::vertex_cover;
  throw std::invalid_argument("unknown reduction kind \"" + std::string(text) + "\" (expected is, clique or vc)");
}

namespace {

void check_k(const Graph& h, int k) {
  if (k < 0 || k > h.size()) throw std::invalid_argument(fmt::format("k={} outside [0, {}]", k, h.size()));
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> out;
  for (int z = lo; z <= hi; ++z) out.push_back(z);
  return out;
}

}  // namespace

DesignInstance gen_independent_set(const Graph& h, int k) {
  check_k(h, k);
  const int m = h.size();
  const int u = m, hat = m + 1;
  DesignInstance inst;
  inst.graph = Graph(m + 2, h.edges());
  inst.graph.add_edge(u, hat);
  for (int v = 0; v < m; ++v) inst.graph.add_edge(u, v);
  const int n = m + 2;
  for (int v = 0; v < n; ++v) inst.degsets.emplace_back(v == u ? range(0, k) : std::vector<int>{0}, n);
  inst.costs = CostMatrix(inst.graph, Cost::infinity(), Cost::infinity());
  inst.budget = Cost(0);
  inst.target = target::SupersetOf{{hat}};
  inst.metadata = {{"source", "is"}, {"k", std::to_string(k)}, {"source_n", std::to_string(m)}};
  return inst;
}

DesignInstance gen_clique(const Graph& h, int k) {
  check_k(h, k);
  if (k < 1) throw std::invalid_argument("clique size k must be at least 1");
  const int n = h.size();
  const int extra = n * k;
  const int total = n + extra;
  DesignInstance inst;
  inst.graph = Graph(total, h.edges());
  for (int a = n; a < total; ++a) {
    for (int b = a + 1; b < total; ++b) inst.graph.add_edge(a, b);
  }
  for (int v = 0; v < total; ++v) inst.degsets.push_back(DegreeSet::interval(extra + k - 1, extra + n, total));
  inst.costs = CostMatrix(inst.graph, Cost(1), Cost(0));
  inst.budget = Cost(static_cast<std::int64_t>(n) * k * k);
  inst.target = target::SupersetOf{range(n, total - 1)};
  inst.metadata = {{"source", "clique"}, {"k", std::to_string(k)}, {"source_n", std::to_string(n)}};
  return inst;
}

DesignInstance gen_vertex_cover(const Graph& h, int k) {
  check_k(h, k);
  const int m = h.size();
  const auto edges = h.edges();
  const int w = m + static_cast<int>(edges.size());
  const int n = w + 1;
  DesignInstance inst;
  inst.graph = Graph(n);
  for (int v = 0; v < m; ++v) inst.graph.add_edge(w, v);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inst.graph.add_edge(edges[e].first, m + static_cast<int>(e));
    inst.graph.add_edge(edges[e].second, m + static_cast<int>(e));
  }
  for (int v = 0; v < m; ++v) inst.degsets.emplace_back(std::vector<int>{0, h.degree(v) + 1}, n);
  for (std::size_t e = 0; e < edges.size(); ++e) inst.degsets.emplace_back(std::vector<int>{1, 2}, n);
  inst.degsets.emplace_back(range(0, k), n);
  inst.costs = CostMatrix(inst.graph, Cost::infinity(), Cost(0));
  inst.budget = Cost(0);
  inst.target = target::All{};
  inst.metadata = {{"source", "vc"},
                   {"k", std::to_string(k)},
                   {"source_n", std::to_string(m)},
                   {"budget_note", "removals are free, so budget 0 is equivalent to any nonnegative budget"}};
  return inst;
}

DesignInstance generate(const SourceInstance& src) {
  switch (src.kind) {
    case ReductionKind::independent_set: return gen_independent_set(src.h, src.k);
    case ReductionKind::clique: return gen_clique(src.h, src.k);
    case ReductionKind::vertex_cover: return gen_vertex_cover(src.h, src.k);
  }
  throw std::logic_error("unknown reduction kind");
}

Solution clique_witness(const DesignInstance& inst, const Graph& h, int k, const std::vector<int>& clique) {
  const int n = h.size();
  if (static_cast<int>(clique.size()) != k || !is_clique(h, clique)) {
    throw std::invalid_argument("clique_witness needs a clique of exactly k vertices");
  }
  Graph final_edges = inst.graph;
  for (int a = n; a < inst.size(); ++a) {
    for (int v : clique) final_edges.set_edge(a, v, true);
  }
  std::vector<int> investing = clique;
  for (int a = n; a < inst.size(); ++a) investing.push_back(a);
  std::sort(investing.begin(), investing.end());
  return make_solution(inst, std::move(final_edges), StrategyProfile::from_set(inst.size(), investing));
}

std::vector<int> reconstruct_witness(const SourceInstance& src, const Solution& sol) {
  const Graph& h = src.h;
  const int m = h.size();
  const Graph& g = sol.final_edges;
  std::vector<int> cert;
  bool ok = false;
  switch (src.kind) {
    case ReductionKind::independent_set: {
      if (g.size() != m + 2) throw InvalidInstance("solution size does not match the generated instance");
      for (int v = 0; v < m; ++v) {
        if (sol.investing.invests(v)) cert.push_back(v);
      }
      ok = static_cast<int>(cert.size()) >= src.k && is_independent_set(h, cert);
      break;
    }
    case ReductionKind::clique: {
      if (g.size() != m + m * src.k) throw InvalidInstance("solution size does not match the generated instance");
      for (int v = 0; v < m; ++v) {
        bool touches = false;
        for (int a = m; a < g.size() && !touches; ++a) touches = g.has_edge(a, v);
        if (touches) cert.push_back(v);
      }
      ok = static_cast<int>(cert.size()) >= src.k && is_clique(h, cert);
      break;
    }
    case ReductionKind::vertex_cover: {
      const int w = m + static_cast<int>(h.edge_count());
      if (g.size() != w + 1) throw InvalidInstance("solution size does not match the generated instance");
      for (int v = 0; v < m; ++v) {
        if (g.has_edge(w, v)) cert.push_back(v);
      }
      ok = static_cast<int>(cert.size()) <= src.k && is_vertex_cover(h, cert);
      break;
    }
  }
  if (!ok) {
    throw InvalidInstance(fmt::format("reconstructed {} certificate {{{}}} does not verify for k={}", to_string(src.kind),
                                      fmt::join(cert, ","), src.k));
  }
  return cert;
}

bool is_independent_set(const Graph& h, const std::vector<int>& set) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b] || h.has_edge(set[a], set[b])) return false;
    }
  }
  return true;
}

bool is_clique(const Graph& h, const std::vector<int>& set) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b] || !h.has_edge(set[a], set[b])) return false;
    }
  }
  return true;
}

bool is_vertex_cover(const Graph& h, const std::vector<int>& set) {
  std::vector<char> in(h.size(), 0);
  for (int v : set) in.at(v) = 1;
  for (auto [a, b] : h.edges()) {
    if (!in[a] && !in[b]) return false;
  }
  return true;
}

namespace {

// First k-subset in lexicographic order accepted by `accept`.
std::optional<std::vector<int>> first_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& accept) {
  if (k < 0 || k > n) return std::nullopt;
  std::vector<int> pick(k);
  for (int t = 0; t < k; ++t) pick[t] = t;
  while (true) {
    if (accept(pick)) return pick;
    int t = k - 1;
    while (t >= 0 && pick[t] == n - k + t) --t;
    if (t < 0) return std::nullopt;
    ++pick[t];
    for (int s = t + 1; s < k; ++s) pick[s] = pick[s - 1] + 1;
  }
}

}  // namespace

std::optional<std::vector<int>> find_independent_set(const Graph& h, int k) {
  return first_subset(h.size(), k, [&](const std::vector<int>& s) { return is_independent_set(h, s); });
}

std::optional<std::vector<int>> find_clique(const Graph& h, int k) {
  return first_subset(h.size(), k, [&](const std::vector<int>& s) { return is_clique(h, s); });
}

std::optional<std::vector<int>> find_vertex_cover(const Graph& h, int k) {
  for (int size = 0; size <= std::min(k, h.size()); ++size) {
    if (auto s = first_subset(h.size(), size, [&](const std::vector<int>& c) { return is_vertex_cover(h, c); })) return s;
  }
  return std::nullopt;
}

bool source_answer(const SourceInstance& src) {
  switch (src.kind) {
    case ReductionKind::independent_set: return find_independent_set(src.h, src.k).has_value();
    case ReductionKind::clique: return find_clique(src.h, src.k).has_value();
    case ReductionKind::vertex_cover: return find_vertex_cover(src.h, src.k).has_value();
  }
  return false;
}

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("negative node count");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0, 1]");
  std::mt19937_64 rng(seed);
  const double unit = 1.0 / static_cast<double>(std::uint64_t{1} << 53);
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double draw = static_cast<double>(rng() >> 11) * unit;
      if (draw < p) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace bnpg
