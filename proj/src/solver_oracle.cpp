#include "bnpg/error.hpp"
#include "bnpg/solver.hpp"
#include "solver_internal.hpp"

#include <fmt/format.h>
#include <numeric>

namespace bnpg {

namespace {

// Exhaustive search for one fixed investing set. Pairs are decided in
// lexicographic order; a player is pruned as soon as no count still
// reachable for it is acceptable.
class FixedSetSearch {
 public:
  FixedSetSearch(const DesignInstance& inst, std::uint64_t mask, std::int64_t scale)
      : n_(inst.size()), invest_(n_), cur_(n_, 0), open_(n_, 0), good_prefix_(n_) {
    for (int v = 0; v < n_; ++v) invest_[v] = (mask >> v) & 1;
    for (int v = 0; v < n_; ++v) {
      auto& pre = good_prefix_[v];
      pre.assign(n_ + 1, 0);
      for (int t = 0; t < n_; ++t) pre[t + 1] = pre[t] + (inst.degsets[v].contains(t) == static_cast<bool>(invest_[v]));
    }
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        bool present = inst.graph.has_edge(i, j);
        const Cost& c = inst.costs.at(i, j);
        bool matters = invest_[i] || invest_[j];
        if (matters && c.is_finite()) {
          const Rational& r = c.value();
          free_.push_back({i, j, present, checked_mul(r.numerator(), scale / r.denominator())});
          if (invest_[j]) ++open_[i];
          if (invest_[i]) ++open_[j];
        } else if (present) {
          if (invest_[j]) ++cur_[i];
          if (invest_[i]) ++cur_[j];
        }
      }
    }
    toggled_.assign(free_.size(), 0);
  }

  /// Runs the search, improving `best` (scaled cost) strictly. Returns true
  /// when a cheaper solution was found; its toggles are then in best_toggles.
  bool run(std::optional<std::int64_t>& best, std::vector<Edge>& best_toggles, std::uint64_t& nodes) {
    for (int v = 0; v < n_; ++v) {
      if (!reachable(v)) return false;
    }
    best_ = &best;
    best_toggles_ = &best_toggles;
    nodes_ = &nodes;
    improved_ = false;
    dfs(0, 0);
    return improved_;
  }

 private:
  struct FreePair {
    int i, j;
    bool present;
    std::int64_t cost;
  };

  bool reachable(int v) const {
    int lo = cur_[v], hi = std::min(cur_[v] + open_[v], n_ - 1);
    return good_prefix_[v][hi + 1] - good_prefix_[v][lo] > 0;
  }

  void dfs(std::size_t pos, std::int64_t cost) {
    ++*nodes_;
    if (*best_ && cost >= **best_) return;
    if (pos == free_.size()) {
      *best_ = cost;
      best_toggles_->clear();
      for (std::size_t k = 0; k < free_.size(); ++k) {
        if (toggled_[k]) best_toggles_->push_back({free_[k].i, free_[k].j});
      }
      improved_ = true;
      return;
    }
    const FreePair& fp = free_[pos];
    for (int toggle = 0; toggle < 2; ++toggle) {
      bool present = fp.present != static_cast<bool>(toggle);
      int di = (invest_[fp.j] && present) ? 1 : 0;
      int dj = (invest_[fp.i] && present) ? 1 : 0;
      if (invest_[fp.j]) --open_[fp.i];
      if (invest_[fp.i]) --open_[fp.j];
      cur_[fp.i] += di;
      cur_[fp.j] += dj;
      toggled_[pos] = static_cast<char>(toggle);
      if (reachable(fp.i) && reachable(fp.j)) dfs(pos + 1, cost + (toggle ? fp.cost : 0));
      cur_[fp.i] -= di;
      cur_[fp.j] -= dj;
      if (invest_[fp.j]) ++open_[fp.i];
      if (invest_[fp.i]) ++open_[fp.j];
    }
    toggled_[pos] = 0;
  }

  int n_;
  std::vector<char> invest_;
  std::vector<int> cur_;   // count from decided and fixed pairs
  std::vector<int> open_;  // undecided pairs that can still raise the count
  std::vector<std::vector<int>> good_prefix_;
  std::vector<FreePair> free_;
  std::vector<char> toggled_;

  std::optional<std::int64_t>* best_ = nullptr;
  std::vector<Edge>* best_toggles_ = nullptr;
  std::uint64_t* nodes_ = nullptr;
  bool improved_ = false;
};

std::vector<std::uint64_t> candidate_sets(const TargetClass& t, int n) {
  auto mask_of = [](const std::vector<int>& members) {
    std::uint64_t m = 0;
    for (int i : members) m |= std::uint64_t{1} << i;
    return m;
  };
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> out;
  if (std::holds_alternative<target::All>(t)) {
    out.push_back(full);
  } else if (const auto* e = std::get_if<target::ExactSet>(&t)) {
    out.push_back(mask_of(e->members));
  } else if (const auto* s = std::get_if<target::SupersetOf>(&t)) {
    std::uint64_t need = mask_of(s->members);
    for (std::uint64_t m = 0; m <= full; ++m) {
      if ((m & need) == need) out.push_back(m);
    }
  } else {
    int r = std::get<target::AtLeast>(t).r;
    for (std::uint64_t m = 0; m <= full; ++m) {
      if (__builtin_popcountll(m) >= r) out.push_back(m);
    }
  }
  return out;
}

}  // namespace

SolveOutcome solve_oracle(const DesignInstance& inst, const SolveOptions& opts) {
  const int n = inst.size();
  if (n > opts.oracle_limit) throw LimitExceeded("oracle", n, opts.oracle_limit);
  if (n > 30) throw LimitExceeded("oracle", n, 30);
  SolveStats stats;
  stats.path = SolverPath::oracle;

  std::int64_t lcm = 1;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Cost& c = inst.costs.at(i, j);
      if (c.is_finite()) {
        std::int64_t d = c.value().denominator();
        lcm = checked_mul(lcm / std::gcd(lcm, d), d);
      }
    }
  }

  std::optional<std::int64_t> best;
  std::vector<Edge> best_toggles;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask : candidate_sets(inst.target, n)) {
    FixedSetSearch search(inst, mask, lcm);
    if (search.run(best, best_toggles, stats.oracle_nodes)) best_mask = mask;
  }
  if (!best) {
    return detail::structurally_infeasible(
        fmt::format("no allowed modification induces an equilibrium in target class {}", describe(inst.target)), stats);
  }

  Graph final_edges = inst.graph;
  for (auto [i, j] : best_toggles) final_edges.set_edge(i, j, !final_edges.has_edge(i, j));
  std::vector<int> investing;
  for (int v = 0; v < n; ++v) {
    if ((best_mask >> v) & 1) investing.push_back(v);
  }
  Solution sol = make_solution(inst, std::move(final_edges), StrategyProfile::from_set(n, investing));
  if (sol.modification_cost != Rational(*best, lcm)) throw std::logic_error("oracle cost bookkeeping is inconsistent");
  return detail::settle(inst, std::move(sol), stats, opts);
}

}  // namespace bnpg
