#include "bnpg/gadget.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <numeric>
#include <set>

namespace bnpg {

std::string_view to_string(GadgetNodeKind kind) {
  switch (kind) {
    case GadgetNodeKind::edge_keep: return "keep";
    case GadgetNodeKind::edge_add: return "add";
    case GadgetNodeKind::add_slot: return "x+";
    case GadgetNodeKind::remove_slot: return "x-";
    case GadgetNodeKind::pad_plus: return "z+";
    case GadgetNodeKind::pad_minus: return "z-";
    case GadgetNodeKind::parity: return "parity";
  }
  return "?";
}

GadgetBuildError::GadgetBuildError(Reason reason, int player)
    : InvalidInstance(reason == Reason::empty_degree_set
                          ? fmt::format("infeasible: empty degree set (player {})", player)
                          : fmt::format("non-interval degree set (player {})", player)),
      reason_(reason),
      player_(player) {}

namespace {

std::int64_t cost_scale(const DesignInstance& inst) {
  std::int64_t l = 1;
  const int n = inst.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Cost& c = inst.costs.at(i, j);
      if (c.is_infinite()) continue;
      std::int64_t d = c.value().denominator();
      l = checked_mul(l / std::gcd(l, d), d);
    }
  }
  return checked_mul(2, l);
}

// Half of the scaled cost, i.e. c * scale / 2.
std::int64_t slot_weight(const Cost& c, std::int64_t scale) {
  const Rational& v = c.value();
  return checked_mul(v.numerator(), (scale / 2) / v.denominator());
}

}  // namespace

GadgetGraph build_gadget(const DesignInstance& inst) {
  if (!std::holds_alternative<target::All>(inst.target)) {
    throw InvalidInstance("gadget construction needs the target \"all\"");
  }
  const int n = inst.size();
  GadgetGraph gg;
  gg.base = inst.graph;
  gg.scale = cost_scale(inst);

  for (int i = 0; i < n; ++i) {
    DegreeSet d = inst.degsets[i].clamped(n);
    if (d.empty()) throw GadgetBuildError(GadgetBuildError::Reason::empty_degree_set, i);
    if (!d.is_interval()) throw GadgetBuildError(GadgetBuildError::Reason::non_interval_degree_set, i);
    GadgetPlayer p;
    p.degree = inst.graph.degree(i);
    p.lo = d.min();
    p.hi = d.max();
    p.add_slots = std::min(p.hi, n - p.degree - 1);
    p.remove_slots = std::min(n - p.lo - 1, p.degree);
    p.pad_plus = p.neutral() - p.lo;
    p.pad_minus = p.hi - p.neutral();
    gg.players.push_back(p);
  }

  for (auto [i, j] : all_pairs(n)) {
    GadgetPair gp;
    gp.pair = {i, j};
    gp.existing = inst.graph.has_edge(i, j);
    gp.cost = inst.costs.at(i, j);
    auto kind = gp.existing ? GadgetNodeKind::edge_keep : GadgetNodeKind::edge_add;
    gp.node_first = static_cast<int>(gg.nodes.size());
    gg.nodes.push_back({kind, i, j});
    gp.node_second = static_cast<int>(gg.nodes.size());
    gg.nodes.push_back({kind, j, i});
    gg.pairs.push_back(gp);
  }
  for (int i = 0; i < n; ++i) {
    auto& p = gg.players[i];
    p.first_node = static_cast<int>(gg.nodes.size());
    for (int s = 0; s < p.add_slots; ++s) gg.nodes.push_back({GadgetNodeKind::add_slot, i, s});
    for (int s = 0; s < p.remove_slots; ++s) gg.nodes.push_back({GadgetNodeKind::remove_slot, i, s});
    for (int s = 0; s < p.pad_plus; ++s) gg.nodes.push_back({GadgetNodeKind::pad_plus, i, s});
    for (int s = 0; s < p.pad_minus; ++s) gg.nodes.push_back({GadgetNodeKind::pad_minus, i, s});
  }
  if (gg.nodes.size() % 2 != 0) {
    gg.parity_node = static_cast<int>(gg.nodes.size());
    gg.nodes.push_back({GadgetNodeKind::parity, -1, -1});
  }

  WeightedGraph& h = gg.graph;
  h = WeightedGraph(static_cast<int>(gg.nodes.size()));
  for (const auto& gp : gg.pairs) {
    h.add_edge(gp.node_first, gp.node_second, 0);
    if (gp.cost.is_infinite()) continue;
    std::int64_t w = slot_weight(gp.cost, gg.scale);
    for (auto [owner, node] : {std::pair{gp.pair.first, gp.node_first}, std::pair{gp.pair.second, gp.node_second}}) {
      const auto& p = gg.players[owner];
      if (gp.existing) {
        for (int s = 0; s < p.remove_slots; ++s) h.add_edge(node, p.remove_node(s), w);
      } else {
        for (int s = 0; s < p.add_slots; ++s) h.add_edge(node, p.add_node(s), w);
      }
    }
  }
  std::vector<int> pads;
  for (const auto& p : gg.players) {
    for (int a = 0; a < p.add_slots; ++a) {
      for (int r = 0; r < p.remove_slots; ++r) h.add_edge(p.add_node(a), p.remove_node(r), 0);
    }
    for (int z = 0; z < p.pad_plus; ++z) {
      for (int a = 0; a < p.add_slots; ++a) h.add_edge(p.plus_node(z), p.add_node(a), 0);
      pads.push_back(p.plus_node(z));
    }
    for (int z = 0; z < p.pad_minus; ++z) {
      for (int r = 0; r < p.remove_slots; ++r) h.add_edge(p.minus_node(z), p.remove_node(r), 0);
      pads.push_back(p.minus_node(z));
    }
  }
  if (gg.parity_node >= 0) pads.push_back(gg.parity_node);
  for (std::size_t a = 0; a < pads.size(); ++a) {
    for (std::size_t b = a + 1; b < pads.size(); ++b) h.add_edge(pads[a], pads[b], 0);
  }
  return gg;
}

Modification extract_modification(const GadgetGraph& gg, const PerfectMatching& m) {
  std::set<std::pair<int, int>> matched(m.pairs.begin(), m.pairs.end());
  Modification out;
  out.final_edges = gg.base;
  for (const auto& gp : gg.pairs) {
    if (!matched.count({gp.node_first, gp.node_second})) {
      out.final_edges.set_edge(gp.pair.first, gp.pair.second, !gp.existing);
    }
  }
  out.cost = Rational(m.total_cost, gg.scale);
  return out;
}

std::optional<PerfectMatching> matching_from_modification(const GadgetGraph& gg, const Graph& final_edges) {
  const int n = gg.base.size();
  if (final_edges.size() != n) return std::nullopt;
  std::vector<std::pair<int, int>> pairs;
  std::int64_t total = 0;
  std::vector<int> used_add(n, 0), used_remove(n, 0);

  for (const auto& gp : gg.pairs) {
    bool toggled = final_edges.has_edge(gp.pair.first, gp.pair.second) != gp.existing;
    if (!toggled) {
      pairs.emplace_back(gp.node_first, gp.node_second);
      continue;
    }
    if (gp.cost.is_infinite()) return std::nullopt;
    std::int64_t w = slot_weight(gp.cost, gg.scale);
    for (auto [owner, node] : {std::pair{gp.pair.first, gp.node_first}, std::pair{gp.pair.second, gp.node_second}}) {
      const auto& p = gg.players[owner];
      int slot;
      if (gp.existing) {
        if (used_remove[owner] >= p.remove_slots) return std::nullopt;
        slot = p.remove_node(used_remove[owner]++);
      } else {
        if (used_add[owner] >= p.add_slots) return std::nullopt;
        slot = p.add_node(used_add[owner]++);
      }
      pairs.emplace_back(node, slot);
      total = checked_add(total, w);
    }
  }

  std::vector<int> spare_pads;
  for (int i = 0; i < n; ++i) {
    const auto& p = gg.players[i];
    int free_add = p.add_slots - used_add[i];
    int free_remove = p.remove_slots - used_remove[i];
    int cancel = std::min(free_add, free_remove);
    for (int c = 0; c < cancel; ++c) pairs.emplace_back(p.add_node(used_add[i] + c), p.remove_node(used_remove[i] + c));
    free_add -= cancel;
    free_remove -= cancel;
    if (free_add > p.pad_plus || free_remove > p.pad_minus) return std::nullopt;
    for (int c = 0; c < free_add; ++c) pairs.emplace_back(p.add_node(p.add_slots - free_add + c), p.plus_node(c));
    for (int c = 0; c < free_remove; ++c) {
      pairs.emplace_back(p.remove_node(p.remove_slots - free_remove + c), p.minus_node(c));
    }
    for (int z = free_add; z < p.pad_plus; ++z) spare_pads.push_back(p.plus_node(z));
    for (int z = free_remove; z < p.pad_minus; ++z) spare_pads.push_back(p.minus_node(z));
  }
  if (gg.parity_node >= 0) spare_pads.push_back(gg.parity_node);
  if (spare_pads.size() % 2 != 0) return std::nullopt;
  for (std::size_t k = 0; k < spare_pads.size(); k += 2) pairs.emplace_back(spare_pads[k], spare_pads[k + 1]);

  for (auto& pr : pairs) {
    if (pr.first > pr.second) std::swap(pr.first, pr.second);
  }
  std::sort(pairs.begin(), pairs.end());
  return PerfectMatching{std::move(pairs), total};
}

std::vector<GadgetViolation> verify_gadget(const GadgetGraph& gg) {
  std::vector<GadgetViolation> out;
  const int n = gg.base.size();
  const int count = static_cast<int>(gg.nodes.size());
  if (count % 2 != 0) out.push_back({"parity", fmt::format("odd node count {}", count)});
  if (gg.graph.node_count() != count) {
    out.push_back({"parity", fmt::format("matching graph has {} nodes, node list {}", gg.graph.node_count(), count)});
  }
  if (static_cast<int>(gg.players.size()) != n) {
    out.push_back({"block-size", "player block count differs from player count"});
    return out;
  }

  for (int i = 0; i < n; ++i) {
    const auto& p = gg.players[i];
    int sigma = p.neutral();
    if (sigma < p.lo || sigma > p.hi) {
      out.push_back({"sigma-range", fmt::format("player {}: neutral degree {} outside [{}, {}]", i, sigma, p.lo, p.hi)});
    }
    if (p.degree != gg.base.degree(i)) out.push_back({"block-size", fmt::format("player {}: stale degree", i)});
    if (p.add_slots != std::min(p.hi, n - p.degree - 1)) {
      out.push_back({"block-size", fmt::format("player {}: {} add slots", i, p.add_slots)});
    }
    if (p.remove_slots != std::min(n - p.lo - 1, p.degree)) {
      out.push_back({"block-size", fmt::format("player {}: {} remove slots", i, p.remove_slots)});
    }
    if (p.pad_plus != sigma - p.lo || p.pad_minus != p.hi - sigma) {
      out.push_back({"block-size", fmt::format("player {}: pad sizes {}/{} for neutral degree {}", i, p.pad_plus,
                                               p.pad_minus, sigma)});
    }
    int sizes[4] = {p.add_slots, p.remove_slots, p.pad_plus, p.pad_minus};
    GadgetNodeKind kinds[4] = {GadgetNodeKind::add_slot, GadgetNodeKind::remove_slot, GadgetNodeKind::pad_plus,
                               GadgetNodeKind::pad_minus};
    int at = p.first_node;
    for (int b = 0; b < 4; ++b) {
      for (int s = 0; s < sizes[b]; ++s, ++at) {
        if (at < 0 || at >= count || gg.nodes[at].kind != kinds[b] || gg.nodes[at].player != i) {
          out.push_back({"block-size", fmt::format("player {}: block layout broken at node {}", i, at)});
          b = 4;
          break;
        }
      }
    }
  }

  // Every matching edge must join node kinds that the construction connects.
  auto allowed = [&](const GadgetNode& a, const GadgetNode& b) {
    using K = GadgetNodeKind;
    auto is_pad = [](const GadgetNode& x) {
      return x.kind == K::pad_plus || x.kind == K::pad_minus || x.kind == K::parity;
    };
    if (is_pad(a) && is_pad(b)) return true;
    if (a.kind == b.kind && (a.kind == K::edge_keep || a.kind == K::edge_add)) {
      return a.player == b.index && b.player == a.index;
    }
    auto pair_of = [](K x, K y, K u, K v) { return (x == u && y == v) || (x == v && y == u); };
    if (a.player != b.player) return false;
    return pair_of(a.kind, b.kind, K::edge_keep, K::remove_slot) || pair_of(a.kind, b.kind, K::edge_add, K::add_slot) ||
           pair_of(a.kind, b.kind, K::add_slot, K::remove_slot) || pair_of(a.kind, b.kind, K::pad_plus, K::add_slot) ||
           pair_of(a.kind, b.kind, K::pad_minus, K::remove_slot);
  };
  for (const auto& e : gg.graph.edges()) {
    if (e.u >= count || e.v >= count || !allowed(gg.nodes[e.u], gg.nodes[e.v])) {
      out.push_back({"edge", fmt::format("unexpected edge ({}, {})", e.u, e.v)});
    } else if (e.weight != 0) {
      const auto& a = gg.nodes[e.u];
      bool slot_edge = a.kind == GadgetNodeKind::edge_keep || a.kind == GadgetNodeKind::edge_add ||
                       gg.nodes[e.v].kind == GadgetNodeKind::edge_keep || gg.nodes[e.v].kind == GadgetNodeKind::edge_add;
      bool pair_edge = a.kind == gg.nodes[e.v].kind;
      if (!slot_edge || pair_edge) out.push_back({"edge", fmt::format("nonzero weight on ({}, {})", e.u, e.v)});
    }
  }
  std::set<std::pair<int, int>> present;
  for (const auto& e : gg.graph.edges()) present.insert(std::minmax(e.u, e.v));
  for (const auto& gp : gg.pairs) {
    if (!present.count(std::minmax(gp.node_first, gp.node_second))) {
      out.push_back({"edge", fmt::format("pair ({}, {}) lacks its keep edge", gp.pair.first, gp.pair.second)});
    }
  }
  return out;
}

std::string dump_gadget(const GadgetGraph& gg) {
  std::string out = fmt::format("c gadget for {} players, cost scale {}\n", gg.base.size(), gg.scale);
  out += fmt::format("p edge {} {}\n", gg.nodes.size(), gg.graph.edges().size());
  for (std::size_t k = 0; k < gg.nodes.size(); ++k) {
    const auto& node = gg.nodes[k];
    if (node.kind == GadgetNodeKind::parity) {
      out += fmt::format("n {} parity\n", k);
    } else {
      out += fmt::format("n {} {} {} {}\n", k, to_string(node.kind), node.player, node.index);
    }
  }
  for (const auto& e : gg.graph.edges()) out += fmt::format("e {} {} {}\n", e.u, e.v, e.weight);
  return out;
}

}  // namespace bnpg
