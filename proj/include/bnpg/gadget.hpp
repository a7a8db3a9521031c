#pragma once

#include "bnpg/error.hpp"
#include "bnpg/instance.hpp"
#include "bnpg/matching.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bnpg {

enum class GadgetNodeKind { edge_keep, edge_add, add_slot, remove_slot, pad_plus, pad_minus, parity };

std::string_view to_string(GadgetNodeKind kind);

/// Node of the auxiliary matching graph. For edge_keep / edge_add, `player`
/// is the endpoint the node belongs to and `index` the other endpoint; for
/// slot and pad nodes `index` is the position inside the player's block.
struct GadgetNode {
  GadgetNodeKind kind = GadgetNodeKind::parity;
  int player = -1;
  int index = -1;
};

/// Per-player block sizes, with the clamped interval [lo, hi].
struct GadgetPlayer {
  int degree = 0;
  int lo = 0;
  int hi = 0;
  int add_slots = 0;
  int remove_slots = 0;
  int pad_plus = 0;
  int pad_minus = 0;
  int first_node = -1;  // blocks follow in the order add, remove, plus, minus

  int add_node(int s) const { return first_node + s; }
  int remove_node(int s) const { return first_node + add_slots + s; }
  int plus_node(int s) const { return first_node + add_slots + remove_slots + s; }
  int minus_node(int s) const { return first_node + add_slots + remove_slots + pad_plus + s; }

  /// Degree when every add slot holds an addition and every remove slot a
  /// removal. Pads allow moving down to lo and up to hi from here.
  int neutral() const { return degree + add_slots - remove_slots; }
};

/// One vertex pair of the original graph and its two gadget nodes.
struct GadgetPair {
  Edge pair;
  bool existing = false;  // pair is an edge of the input graph
  int node_first = -1;    // node owned by pair.first
  int node_second = -1;   // node owned by pair.second
  Cost cost;
};

struct GadgetGraph {
  Graph base;  // input graph
  std::vector<GadgetNode> nodes;
  WeightedGraph graph;
  std::vector<GadgetPlayer> players;
  std::vector<GadgetPair> pairs;  // sorted by pair
  /// Finite costs are multiplied by `scale` (= 2 * lcm of denominators);
  /// each slot edge carries half of a scaled pair cost.
  std::int64_t scale = 2;
  int parity_node = -1;
};

/// Raised by build_gadget when a player's clamped degree set is empty or not
/// an interval.
class GadgetBuildError : public InvalidInstance {
 public:
  enum class Reason { empty_degree_set, non_interval_degree_set };

  GadgetBuildError(Reason reason, int player);

  Reason reason() const { return reason_; }
  int player() const { return player_; }

 private:
  Reason reason_;
  int player_;
};

/// Builds the degree-interval matching gadget for an instance whose target is
/// "all". Node order: pair nodes by sorted pair, then per player its add
/// slots, remove slots, plus pads and minus pads, then the parity node.
GadgetGraph build_gadget(const DesignInstance& inst);

struct Modification {
  Graph final_edges;
  Rational cost{0};
};

/// Reads the edge set off a perfect matching: a pair is toggled exactly when
/// its two pair nodes are not matched to each other.
Modification extract_modification(const GadgetGraph& gg, const PerfectMatching& m);

/// The reverse direction: a perfect matching of the gadget encoding the
/// modification `final_edges`. Added and removed pairs take their owner's
/// slots in sorted-pair order. nullopt when `final_edges` toggles a
/// prohibited pair or leaves some degree outside its interval.
std::optional<PerfectMatching> matching_from_modification(const GadgetGraph& gg, const Graph& final_edges);

struct GadgetViolation {
  std::string code;  // "parity", "sigma-range", "block-size", "edge"
  std::string message;
};

/// Structural self-check of a gadget. Empty result means consistent.
std::vector<GadgetViolation> verify_gadget(const GadgetGraph& gg);

/// Annotated edge-list dump: "n <id> <tag>" lines, then "e <u> <v> <w>".
std::string dump_gadget(const GadgetGraph& gg);

}  // namespace bnpg
