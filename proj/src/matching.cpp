#include "bnpg/matching.hpp"

#include "bnpg/error.hpp"
#include "bnpg/rational.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace bnpg {

void WeightedGraph::add_edge(int u, int v, std::int64_t weight) {
  if (u == v) throw std::invalid_argument("loop at node " + std::to_string(u));
  if (u < 0 || v < 0 || u >= node_count_ || v >= node_count_) throw std::invalid_argument("endpoint out of range");
  if (weight < 0) throw std::invalid_argument("negative edge weight");
  std::pair<int, int> key = std::minmax(u, v);
  auto it = std::lower_bound(seen_.begin(), seen_.end(), key);
  if (it != seen_.end() && *it == key) {
    throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
  }
  seen_.insert(it, key);
  edges_.push_back({u, v, weight});
}

namespace {

// Maximum-weight maximum-cardinality matching. Follows the classic
// primal-dual formulation (Edmonds / Galil) with S-blossoms, T-blossoms and
// lazy best-edge bookkeeping. Endpoint p of edge k is p = 2k (first end) or
// 2k+1 (second end); endpoint[p ^ 1] is the opposite vertex.
class Blossom {
 public:
  Blossom(int nvertex, std::vector<WeightedEdge> edges) : nv_(nvertex), edges_(std::move(edges)) {}

  std::vector<int> run();

 private:
  using i64 = std::int64_t;

  i64 slack(int k) const {
    const auto& e = edges_[k];
    return dual_[e.u] + dual_[e.v] - 2 * e.weight;
  }

  static int at(const std::vector<int>& v, int j) {
    int n = static_cast<int>(v.size());
    return v[((j % n) + n) % n];
  }

  void leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : childs_[b]) leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p);
  int scan_blossom(int v, int w);
  void add_blossom(int base, int k);
  void expand_blossom(int b, bool endstage);
  void augment_blossom(int b, int v);
  void augment_matching(int k);

  int nv_;
  std::vector<WeightedEdge> edges_;
  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_, label_, labelend_, inblossom_, parent_, base_, bestedge_;
  std::vector<std::vector<int>> childs_, endps_, bestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unused_;
  std::vector<i64> dual_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

void Blossom::assign_label(int w, int t, int p) {
  int b = inblossom_[w];
  label_[w] = label_[b] = t;
  labelend_[w] = labelend_[b] = p;
  bestedge_[w] = bestedge_[b] = -1;
  if (t == 1) {
    leaves(b, queue_);
  } else if (t == 2) {
    int base = base_[b];
    assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
  }
}

int Blossom::scan_blossom(int v, int w) {
  std::vector<int> path;
  int base = -1;
  while (v != -1 || w != -1) {
    int b = inblossom_[v];
    if (label_[b] & 4) {
      base = base_[b];
      break;
    }
    path.push_back(b);
    label_[b] = 5;
    if (labelend_[b] == -1) {
      v = -1;
    } else {
      v = endpoint_[labelend_[b]];
      b = inblossom_[v];
      v = endpoint_[labelend_[b]];
    }
    if (w != -1) std::swap(v, w);
  }
  for (int b : path) label_[b] = 1;
  return base;
}

void Blossom::add_blossom(int base, int k) {
  int v = edges_[k].u, w = edges_[k].v;
  int bb = inblossom_[base], bv = inblossom_[v], bw = inblossom_[w];
  int b = unused_.back();
  unused_.pop_back();
  base_[b] = base;
  parent_[b] = -1;
  parent_[bb] = b;
  auto& path = childs_[b];
  auto& endps = endps_[b];
  path.clear();
  endps.clear();
  while (bv != bb) {
    parent_[bv] = b;
    path.push_back(bv);
    endps.push_back(labelend_[bv]);
    v = endpoint_[labelend_[bv]];
    bv = inblossom_[v];
  }
  path.push_back(bb);
  std::reverse(path.begin(), path.end());
  std::reverse(endps.begin(), endps.end());
  endps.push_back(2 * k);
  while (bw != bb) {
    parent_[bw] = b;
    path.push_back(bw);
    endps.push_back(labelend_[bw] ^ 1);
    w = endpoint_[labelend_[bw]];
    bw = inblossom_[w];
  }
  label_[b] = 1;
  labelend_[b] = labelend_[bb];
  dual_[b] = 0;
  for (int leaf : leaves(b)) {
    if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
    inblossom_[leaf] = b;
  }

  std::vector<int> bestedgeto(2 * nv_, -1);
  for (int child : path) {
    std::vector<std::vector<int>> nblists;
    if (!has_bestedges_[child]) {
      for (int leaf : leaves(child)) {
        std::vector<int> list;
        for (int p : neighbend_[leaf]) list.push_back(p / 2);
        nblists.push_back(std::move(list));
      }
    } else {
      nblists.push_back(bestedges_[child]);
    }
    for (const auto& list : nblists) {
      for (int kk : list) {
        int i = edges_[kk].u, j = edges_[kk].v;
        if (inblossom_[j] == b) std::swap(i, j);
        int bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 && (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
          bestedgeto[bj] = kk;
        }
      }
    }
    bestedges_[child].clear();
    has_bestedges_[child] = false;
    bestedge_[child] = -1;
  }
  bestedges_[b].clear();
  for (int kk : bestedgeto) {
    if (kk != -1) bestedges_[b].push_back(kk);
  }
  has_bestedges_[b] = true;
  bestedge_[b] = -1;
  for (int kk : bestedges_[b]) {
    if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }
}

void Blossom::expand_blossom(int b, bool endstage) {
  for (int s : childs_[b]) {
    parent_[s] = -1;
    if (s < nv_) {
      inblossom_[s] = s;
    } else if (endstage && dual_[s] == 0) {
      expand_blossom(s, endstage);
    } else {
      for (int leaf : leaves(s)) inblossom_[leaf] = s;
    }
  }
  if (!endstage && label_[b] == 2) {
    const auto& ch = childs_[b];
    const auto& ep = endps_[b];
    const int len = static_cast<int>(ch.size());
    int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
    int j = static_cast<int>(std::find(ch.begin(), ch.end(), entrychild) - ch.begin());
    int jstep, endptrick;
    if (j & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    int p = labelend_[b];
    while (j != 0) {
      label_[endpoint_[p ^ 1]] = 0;
      label_[endpoint_[at(ep, j - endptrick) ^ endptrick ^ 1]] = 0;
      assign_label(endpoint_[p ^ 1], 2, p);
      allowedge_[at(ep, j - endptrick) / 2] = true;
      j += jstep;
      p = at(ep, j - endptrick) ^ endptrick;
      allowedge_[p / 2] = true;
      j += jstep;
    }
    int bv = at(ch, j);
    label_[endpoint_[p ^ 1]] = label_[bv] = 2;
    labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
    bestedge_[bv] = -1;
    j += jstep;
    while (at(ch, j) != entrychild) {
      bv = at(ch, j);
      if (label_[bv] == 1) {
        j += jstep;
        continue;
      }
      int v = -1;
      for (int leaf : leaves(bv)) {
        v = leaf;
        if (label_[leaf] != 0) break;
      }
      if (label_[v] != 0) {
        label_[v] = 0;
        label_[endpoint_[mate_[base_[bv]]]] = 0;
        assign_label(v, 2, labelend_[v]);
      }
      j += jstep;
    }
  }
  label_[b] = labelend_[b] = -1;
  childs_[b].clear();
  endps_[b].clear();
  base_[b] = -1;
  bestedges_[b].clear();
  has_bestedges_[b] = false;
  bestedge_[b] = -1;
  unused_.push_back(b);
}

void Blossom::augment_blossom(int b, int v) {
  int t = v;
  while (parent_[t] != b) t = parent_[t];
  if (t >= nv_) augment_blossom(t, v);
  auto& ch = childs_[b];
  auto& ep = endps_[b];
  const int len = static_cast<int>(ch.size());
  int i = static_cast<int>(std::find(ch.begin(), ch.end(), t) - ch.begin());
  int j = i;
  int jstep, endptrick;
  if (i & 1) {
    j -= len;
    jstep = 1;
    endptrick = 0;
  } else {
    jstep = -1;
    endptrick = 1;
  }
  while (j != 0) {
    j += jstep;
    t = at(ch, j);
    int p = at(ep, j - endptrick) ^ endptrick;
    if (t >= nv_) augment_blossom(t, endpoint_[p]);
    j += jstep;
    t = at(ch, j);
    if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
    mate_[endpoint_[p]] = p ^ 1;
    mate_[endpoint_[p ^ 1]] = p;
  }
  std::rotate(ch.begin(), ch.begin() + i, ch.end());
  std::rotate(ep.begin(), ep.begin() + i, ep.end());
  base_[b] = base_[ch[0]];
}

void Blossom::augment_matching(int k) {
  const int ends[2][2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
  for (const auto& sp : ends) {
    int s = sp[0], p = sp[1];
    while (true) {
      int bs = inblossom_[s];
      if (bs >= nv_) augment_blossom(bs, s);
      mate_[s] = p;
      if (labelend_[bs] == -1) break;
      int t = endpoint_[labelend_[bs]];
      int bt = inblossom_[t];
      s = endpoint_[labelend_[bt]];
      int j = endpoint_[labelend_[bt] ^ 1];
      if (bt >= nv_) augment_blossom(bt, j);
      mate_[j] = labelend_[bt];
      p = labelend_[bt] ^ 1;
    }
  }
}

std::vector<int> Blossom::run() {
  const int nedge = static_cast<int>(edges_.size());
  i64 maxweight = 0;
  for (const auto& e : edges_) maxweight = std::max(maxweight, e.weight);

  endpoint_.resize(2 * nedge);
  neighbend_.assign(nv_, {});
  for (int k = 0; k < nedge; ++k) {
    endpoint_[2 * k] = edges_[k].u;
    endpoint_[2 * k + 1] = edges_[k].v;
    neighbend_[edges_[k].u].push_back(2 * k + 1);
    neighbend_[edges_[k].v].push_back(2 * k);
  }
  mate_.assign(nv_, -1);
  label_.assign(2 * nv_, 0);
  labelend_.assign(2 * nv_, -1);
  inblossom_.resize(nv_);
  for (int v = 0; v < nv_; ++v) inblossom_[v] = v;
  parent_.assign(2 * nv_, -1);
  childs_.assign(2 * nv_, {});
  base_.assign(2 * nv_, -1);
  for (int v = 0; v < nv_; ++v) base_[v] = v;
  endps_.assign(2 * nv_, {});
  bestedge_.assign(2 * nv_, -1);
  bestedges_.assign(2 * nv_, {});
  has_bestedges_.assign(2 * nv_, false);
  unused_.clear();
  for (int b = nv_; b < 2 * nv_; ++b) unused_.push_back(b);
  dual_.assign(2 * nv_, 0);
  for (int v = 0; v < nv_; ++v) dual_[v] = maxweight;
  allowedge_.assign(nedge, false);

  for (int stage = 0; stage < nv_; ++stage) {
    std::fill(label_.begin(), label_.end(), 0);
    std::fill(bestedge_.begin(), bestedge_.end(), -1);
    for (int b = nv_; b < 2 * nv_; ++b) {
      bestedges_[b].clear();
      has_bestedges_[b] = false;
    }
    std::fill(allowedge_.begin(), allowedge_.end(), false);
    queue_.clear();
    for (int v = 0; v < nv_; ++v) {
      if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
    }

    bool augmented = false;
    while (true) {
      while (!queue_.empty() && !augmented) {
        int v = queue_.back();
        queue_.pop_back();
        for (int p : neighbend_[v]) {
          int k = p / 2;
          int w = endpoint_[p];
          if (inblossom_[v] == inblossom_[w]) continue;
          i64 kslack = 0;
          if (!allowedge_[k]) {
            kslack = slack(k);
            if (kslack <= 0) allowedge_[k] = true;
          }
          if (allowedge_[k]) {
            if (label_[inblossom_[w]] == 0) {
              assign_label(w, 2, p ^ 1);
            } else if (label_[inblossom_[w]] == 1) {
              int base = scan_blossom(v, w);
              if (base >= 0) {
                add_blossom(base, k);
              } else {
                augment_matching(k);
                augmented = true;
                break;
              }
            } else if (label_[w] == 0) {
              label_[w] = 2;
              labelend_[w] = p ^ 1;
            }
          } else if (label_[inblossom_[w]] == 1) {
            int b = inblossom_[v];
            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
          } else if (label_[w] == 0) {
            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
          }
        }
      }
      if (augmented) break;

      // Dual adjustment. Max-cardinality mode: no type-1 delta unless nothing else applies.
      int deltatype = -1;
      i64 delta = 0;
      int deltaedge = -1, deltablossom = -1;
      for (int v = 0; v < nv_; ++v) {
        if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
          i64 d = slack(bestedge_[v]);
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 2;
            deltaedge = bestedge_[v];
          }
        }
      }
      for (int b = 0; b < 2 * nv_; ++b) {
        if (parent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
          i64 kslack = slack(bestedge_[b]);
          if (kslack % 2 != 0) throw std::logic_error("blossom: odd slack between S-vertices");
          i64 d = kslack / 2;
          if (deltatype == -1 || d < delta) {
            delta = d;
            deltatype = 3;
            deltaedge = bestedge_[b];
          }
        }
      }
      for (int b = nv_; b < 2 * nv_; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1 && label_[b] == 2 && (deltatype == -1 || dual_[b] < delta)) {
          delta = dual_[b];
          deltatype = 4;
          deltablossom = b;
        }
      }
      if (deltatype == -1) {
        deltatype = 1;
        delta = std::max<i64>(0, *std::min_element(dual_.begin(), dual_.begin() + nv_));
      }

      for (int v = 0; v < nv_; ++v) {
        if (label_[inblossom_[v]] == 1) {
          dual_[v] -= delta;
        } else if (label_[inblossom_[v]] == 2) {
          dual_[v] += delta;
        }
      }
      for (int b = nv_; b < 2 * nv_; ++b) {
        if (base_[b] >= 0 && parent_[b] == -1) {
          if (label_[b] == 1) {
            dual_[b] += delta;
          } else if (label_[b] == 2) {
            dual_[b] -= delta;
          }
        }
      }

      if (deltatype == 1) {
        break;
      } else if (deltatype == 2) {
        allowedge_[deltaedge] = true;
        int i = edges_[deltaedge].u, j = edges_[deltaedge].v;
        if (label_[inblossom_[i]] == 0) std::swap(i, j);
        queue_.push_back(i);
      } else if (deltatype == 3) {
        allowedge_[deltaedge] = true;
        queue_.push_back(edges_[deltaedge].u);
      } else {
        expand_blossom(deltablossom, false);
      }
    }
    if (!augmented) break;

    for (int b = nv_; b < 2 * nv_; ++b) {
      if (parent_[b] == -1 && base_[b] >= 0 && label_[b] == 1 && dual_[b] == 0) expand_blossom(b, true);
    }
  }

  std::vector<int> mate(nv_, -1);
  for (int v = 0; v < nv_; ++v) {
    if (mate_[v] >= 0) mate[v] = endpoint_[mate_[v]];
  }
  return mate;
}

}  // namespace

std::optional<PerfectMatching> min_cost_perfect_matching(const WeightedGraph& g) {
  const int n = g.node_count();
  if (n % 2 != 0) return std::nullopt;
  if (n == 0) return PerfectMatching{};

  std::int64_t maxw = 0;
  for (const auto& e : g.edges()) maxw = std::max(maxw, e.weight);
  // Maximising sum(maxw - w) over maximum-cardinality matchings minimises the
  // cost among perfect ones. Doubling keeps every dual update integral.
  std::vector<WeightedEdge> flipped;
  flipped.reserve(g.edges().size());
  for (const auto& e : g.edges()) flipped.push_back({e.u, e.v, checked_mul(2, maxw - e.weight)});
  checked_mul(4, checked_mul(2, maxw));  // headroom for dual sums

  std::vector<int> mate = Blossom(n, std::move(flipped)).run();

  PerfectMatching out;
  for (int v = 0; v < n; ++v) {
    if (mate[v] < 0) return std::nullopt;
    if (v < mate[v]) out.pairs.emplace_back(v, mate[v]);
  }
  std::vector<std::pair<std::pair<int, int>, std::int64_t>> lookup;
  lookup.reserve(g.edges().size());
  for (const auto& e : g.edges()) lookup.push_back({std::minmax(e.u, e.v), e.weight});
  std::sort(lookup.begin(), lookup.end());
  for (const auto& pr : out.pairs) {
    auto it = std::lower_bound(lookup.begin(), lookup.end(), std::make_pair(pr, std::numeric_limits<std::int64_t>::min()));
    out.total_cost = checked_add(out.total_cost, it->second);
  }
  return out;
}

namespace {

struct BruteForce {
  int n;
  std::vector<std::int64_t> w;  // n*n, -1 = absent
  std::vector<char> used;
  std::vector<std::pair<int, int>> current;
  std::int64_t cost = 0;
  std::optional<PerfectMatching> best;

  void recurse() {
    int a = 0;
    while (a < n && used[a]) ++a;
    if (a == n) {
      if (!best || cost < best->total_cost) best = PerfectMatching{current, cost};
      return;
    }
    used[a] = 1;
    for (int b = a + 1; b < n; ++b) {
      std::int64_t wab = w[static_cast<std::size_t>(a) * n + b];
      if (used[b] || wab < 0) continue;
      used[b] = 1;
      current.emplace_back(a, b);
      cost += wab;
      recurse();
      cost -= wab;
      current.pop_back();
      used[b] = 0;
    }
    used[a] = 0;
  }
};

}  // namespace

std::optional<PerfectMatching> brute_force_matching(const WeightedGraph& g, int limit) {
  const int n = g.node_count();
  if (n > limit) throw LimitExceeded("brute-force matching", n, limit);
  if (n % 2 != 0) return std::nullopt;
  BruteForce bf{n, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, -1), std::vector<char>(n, 0), {}, 0, {}};
  for (const auto& e : g.edges()) {
    bf.w[static_cast<std::size_t>(e.u) * n + e.v] = e.weight;
    bf.w[static_cast<std::size_t>(e.v) * n + e.u] = e.weight;
  }
  bf.recurse();
  return bf.best;
}

}  // namespace bnpg
