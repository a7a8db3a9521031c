#include "bnpg/game.hpp"

#include "bnpg/error.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bnpg {

UtilityTable::UtilityTable(std::vector<Rational> values, Rational invest_cost)
    : values_(std::move(values)), invest_cost_(invest_cost) {
  if (values_.empty()) throw std::invalid_argument("utility table needs at least one value");
  if (invest_cost_ < 0) throw std::invalid_argument("negative investment cost");
  for (std::size_t z = 0; z < values_.size(); ++z) {
    if (values_[z] < 0) throw std::invalid_argument("negative utility value at z=" + std::to_string(z));
    if (z > 0 && values_[z] < values_[z - 1]) {
      throw std::invalid_argument("utility table decreases at z=" + std::to_string(z));
    }
  }
}

Rational UtilityTable::utility(bool invests, int count) const {
  int arg = count + (invests ? 1 : 0);
  if (count < 0 || arg >= static_cast<int>(values_.size())) {
    throw std::out_of_range("utility argument " + std::to_string(arg) + " outside table");
  }
  return values_[arg] - (invests ? invest_cost_ : Rational(0));
}

std::string_view to_string(DegreeShape shape) {
  switch (shape) {
    case DegreeShape::general: return "general";
    case DegreeShape::concave: return "concave";
    case DegreeShape::convex: return "convex";
    case DegreeShape::sigmoid: return "sigmoid";
  }
  return "general";
}

DegreeShape classify_shape(std::span<const int> sorted_members, int n) {
  std::vector<int> inside;
  for (int m : sorted_members) {
    if (m >= 0 && m < n) inside.push_back(m);
  }
  if (inside.empty()) return DegreeShape::concave;
  bool contiguous = inside.back() - inside.front() + 1 == static_cast<int>(inside.size());
  if (!contiguous) return DegreeShape::general;
  if (inside.front() == 0) return DegreeShape::concave;
  if (inside.back() == n - 1) return DegreeShape::convex;
  return DegreeShape::sigmoid;
}

DegreeSet::DegreeSet(std::vector<int> members, int n) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.front() < 0) {
    throw std::invalid_argument("negative degree-set member " + std::to_string(members_.front()));
  }
  shape_ = classify_shape(members_, n);
}

DegreeSet DegreeSet::interval(int lo, int hi, int n) {
  std::vector<int> m;
  for (int z = std::max(lo, 0); z <= hi; ++z) m.push_back(z);
  return DegreeSet(std::move(m), n);
}

bool DegreeSet::contains(int count) const {
  return std::binary_search(members_.begin(), members_.end(), count);
}

DegreeSet DegreeSet::clamped(int n) const {
  std::vector<int> m;
  for (int z : members_) {
    if (z < n) m.push_back(z);
  }
  return DegreeSet(std::move(m), n);
}

bool DegreeSet::is_interval() const {
  return !members_.empty() && members_.back() - members_.front() + 1 == static_cast<int>(members_.size());
}

StrategyProfile::StrategyProfile(int n, bool all_invest) : bits_(static_cast<std::size_t>(n), all_invest) {}

StrategyProfile StrategyProfile::from_set(int n, std::span<const int> investing) {
  StrategyProfile x(n);
  for (int i : investing) {
    if (i < 0 || i >= n) throw std::out_of_range("investor " + std::to_string(i) + " out of range");
    x.bits_[i] = 1;
  }
  return x;
}

std::vector<int> StrategyProfile::investing_set() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

int StrategyProfile::investor_count() const {
  return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

int neighbor_investors(const Graph& g, const StrategyProfile& x, int i) {
  if (x.size() != g.size()) throw std::invalid_argument("profile length differs from player count");
  if (i < 0 || i >= g.size()) throw std::out_of_range("player " + std::to_string(i) + " out of range");
  int count = 0;
  for (int j = 0; j < g.size(); ++j) {
    if (j != i && x.invests(j) && g.has_edge(i, j)) ++count;
  }
  return count;
}

DegreeSet derive_degree_set(const UtilityTable& u) {
  const auto& g = u.values();
  const int n = u.player_count();
  std::vector<int> members;
  for (int z = 0; z < n; ++z) {
    if (g[z + 1] - g[z] >= u.invest_cost()) members.push_back(z);
  }
  return DegreeSet(std::move(members), n);
}

UtilityTable realize_degree_set(const DegreeSet& d, int n) {
  if (n < 1) throw std::invalid_argument("player count must be positive");
  for (int z : d.members()) {
    if (z >= n) throw std::out_of_range("degree-set member " + std::to_string(z) + " outside [0, n-1]");
  }
  std::vector<Rational> values(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int z = 0; z < n; ++z) values[z + 1] = values[z] + (d.contains(z) ? 2 : 0);
  return UtilityTable(std::move(values), Rational(1));
}

bool is_best_response(const DegreeSet& d, bool invests, int count) {
  return invests == d.contains(count);
}

PsneCheck is_psne(const Graph& g, std::span<const DegreeSet> degsets, const StrategyProfile& x) {
  if (static_cast<int>(degsets.size()) != g.size() || x.size() != g.size()) {
    throw std::invalid_argument("degree sets / profile size differ from player count");
  }
  PsneCheck check;
  for (int i = 0; i < g.size(); ++i) {
    if (!is_best_response(degsets[i], x.invests(i), neighbor_investors(g, x, i))) {
      check.ok = false;
      check.violators.push_back(i);
    }
  }
  return check;
}

std::vector<StrategyProfile> enumerate_psne(const Graph& g, std::span<const DegreeSet> degsets, int limit) {
  const int n = g.size();
  if (n > limit) throw LimitExceeded("PSNE enumeration", n, limit);
  if (static_cast<int>(degsets.size()) != n) throw std::invalid_argument("degree set count differs from player count");

  std::vector<std::uint64_t> nbr(n, 0);
  for (auto [a, b] : g.edges()) {
    nbr[a] |= std::uint64_t{1} << b;
    nbr[b] |= std::uint64_t{1} << a;
  }
  std::vector<std::vector<int>> found;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      int count = __builtin_popcountll(nbr[i] & mask);
      ok = is_best_response(degsets[i], (mask >> i) & 1, count);
    }
    if (!ok) continue;
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1) members.push_back(i);
    }
    found.push_back(std::move(members));
  }
  std::sort(found.begin(), found.end());
  std::vector<StrategyProfile> out;
  out.reserve(found.size());
  for (const auto& m : found) out.push_back(StrategyProfile::from_set(n, m));
  return out;
}

}  // namespace bnpg
