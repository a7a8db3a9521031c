#pragma once

#include "bnpg/instance.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace bnpg {

enum class ReductionKind { independent_set, clique, vertex_cover };

std::string_view to_string(ReductionKind kind);
/// Accepts "is", "clique" and "vc". Throws std::invalid_argument otherwise.
ReductionKind parse_reduction_kind(std::string_view text);

/// A source problem instance: graph H and the size parameter k.
struct SourceInstance {
  ReductionKind kind = ReductionKind::independent_set;
  Graph h;
  int k = 0;
};

/// Independent set of size >= k  <=>  some investing superset of {hat u}.
/// Players: H's vertices 0..m-1, then the hub u = m and its pendant hat u = m+1.
/// Every pair is frozen (infinite cost) and the budget is 0.
DesignInstance gen_independent_set(const Graph& h, int k);

/// k-clique  =>  V' (a clique of n*k new players, indices n..n+nk-1) plus the
/// clique can be made to invest within budget n*k^2. Degree sets carry the
/// literal values {nk+k-1, ..., nk+n}; the largest is one above the top
/// reachable count. Requires k >= 1.
DesignInstance gen_clique(const Graph& h, int k);

/// Vertex cover of size <= k  <=>  every player can be made to invest by
/// removals alone. Players: H's vertices, then one player per edge of H in
/// sorted edge order, then the hub w. Removals are free, additions frozen,
/// budget 0.
DesignInstance gen_vertex_cover(const Graph& h, int k);

DesignInstance generate(const SourceInstance& src);

/// The modification from the clique direction of the clique reduction: join
/// every V' player to every member of `clique` (exactly k vertices of H).
Solution clique_witness(const DesignInstance& inst, const Graph& h, int k, const std::vector<int>& clique);

/// Reads the source certificate off a design solution of a generated
/// instance (independent set: investing vertices of H; clique: H-neighbors
/// of V'; vertex cover: vertices whose edge to w is kept) and checks it.
/// Throws InvalidInstance when the certificate does not verify.
std::vector<int> reconstruct_witness(const SourceInstance& src, const Solution& sol);

bool is_independent_set(const Graph& h, const std::vector<int>& set);
bool is_clique(const Graph& h, const std::vector<int>& set);
bool is_vertex_cover(const Graph& h, const std::vector<int>& set);

/// Exhaustive searches (small H only): an independent set or clique of size
/// exactly k, a vertex cover of size at most k. Lexicographically first.
std::optional<std::vector<int>> find_independent_set(const Graph& h, int k);
std::optional<std::vector<int>> find_clique(const Graph& h, int k);
std::optional<std::vector<int>> find_vertex_cover(const Graph& h, int k);

/// Whether the source instance is a yes-instance, by exhaustive search.
bool source_answer(const SourceInstance& src);

/// G(n, p) with every pair decided in lexicographic order by one 64-bit draw
/// of a Mersenne twister seeded with `seed`, so results do not depend on the
/// standard library's distributions.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

}  // namespace bnpg
