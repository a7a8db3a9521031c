#pragma once

#include "bnpg/graph.hpp"
#include "bnpg/rational.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace bnpg {

/// Per-player externality table g(0..n) together with the investment cost c.
///
/// The table carries n+1 values so that the discrete derivative
/// g(z+1) - g(z) is defined for every investing-neighbor count z in
/// {0, ..., n-1}: a player plus up to n-1 investing neighbors reaches n.
class UtilityTable {
 public:
  /// Throws std::invalid_argument unless values is nonempty, nonnegative and
  /// non-decreasing and the cost is nonnegative.
  UtilityTable(std::vector<Rational> values, Rational invest_cost);

  /// Number of players n of the game this table belongs to.
  int player_count() const { return static_cast<int>(values_.size()) - 1; }

  const std::vector<Rational>& values() const { return values_; }
  const Rational& invest_cost() const { return invest_cost_; }

  /// U_i = g(x_i + count) - c * x_i.
  Rational utility(bool invests, int count) const;

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

 private:
  std::vector<Rational> values_;
  Rational invest_cost_;
};

enum class DegreeShape { general, concave, convex, sigmoid };

std::string_view to_string(DegreeShape shape);

/// Set of investing-neighbor counts for which investing is a best response.
///
/// Members are kept sorted and unique. They may exceed n-1 (some generated
/// instances carry such literal values); the shape label is computed on the
/// part inside [0, n-1], with the scan order concave, convex, sigmoid,
/// general. Hence {0} and the empty set are concave, {n-1} is convex.
class DegreeSet {
 public:
  DegreeSet() = default;
  DegreeSet(std::vector<int> members, int n);

  static DegreeSet interval(int lo, int hi, int n);

  bool contains(int count) const;
  bool empty() const { return members_.empty(); }
  const std::vector<int>& members() const { return members_; }
  DegreeShape shape() const { return shape_; }

  /// Intersection with [0, n-1], reclassified against n.
  DegreeSet clamped(int n) const;

  /// True when the members form one nonempty run of consecutive integers.
  bool is_interval() const;
  int min() const { return members_.front(); }
  int max() const { return members_.back(); }

  friend bool operator==(const DegreeSet& a, const DegreeSet& b) {
    return a.members_ == b.members_ && a.shape_ == b.shape_;
  }

 private:
  std::vector<int> members_;
  DegreeShape shape_ = DegreeShape::concave;
};

DegreeShape classify_shape(std::span<const int> sorted_members, int n);

/// Pure strategy profile x in {0,1}^n.
class StrategyProfile {
 public:
  StrategyProfile() = default;
  explicit StrategyProfile(int n, bool all_invest = false);
  static StrategyProfile from_set(int n, std::span<const int> investing);

  int size() const { return static_cast<int>(bits_.size()); }
  bool invests(int i) const { return bits_.at(i) != 0; }
  void set(int i, bool invest) { bits_.at(i) = invest; }

  /// Investing set I in ascending order.
  std::vector<int> investing_set() const;
  int investor_count() const;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// |Neigh(i) ∩ I|. Throws std::out_of_range for a bad index, and
/// std::invalid_argument when the profile length differs from g.size().
int neighbor_investors(const Graph& g, const StrategyProfile& x, int i);

/// D = { z : g(z+1) - g(z) >= c }.
DegreeSet derive_degree_set(const UtilityTable& u);

/// Slope-2 construction with c = 1: g(0) = 0 and g(z+1) = g(z) + 2 exactly
/// when z is in d. Throws std::out_of_range when a member is outside [0, n-1].
UtilityTable realize_degree_set(const DegreeSet& d, int n);

/// Investing is the best response exactly at counts in D (ties go to investing).
bool is_best_response(const DegreeSet& d, bool invests, int count);

struct PsneCheck {
  bool ok = true;
  std::vector<int> violators;  // players not playing a best response
};

PsneCheck is_psne(const Graph& g, std::span<const DegreeSet> degsets, const StrategyProfile& x);

inline constexpr int kDefaultPsneLimit = 20;

/// All PSNE of the game, ordered lexicographically by investing set.
/// Throws LimitExceeded when g.size() > limit.
std::vector<StrategyProfile> enumerate_psne(const Graph& g, std::span<const DegreeSet> degsets,
                                            int limit = kDefaultPsneLimit);

}  // namespace bnpg
