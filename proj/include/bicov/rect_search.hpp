#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"
#include "bicov/rectifier.hpp"

namespace bicov {

struct RectSearchBudget {
  int max_graph_vertices = 8;   // |A|+|B| cap for the oracle
  int max_extra_vertices = 4;   // middle nodes per candidate network
  int max_edges = 16;           // deepest search level
  std::uint64_t max_steps = std::uint64_t(1) << 22;
};

struct RectSearchResult {
  bool exact = false;
  long long lower = 0;
  long long upper = 0;
  std::optional<RectifierNetwork> witness;  // network of size upper
};

namespace detail {

// Iterative-deepening search over DAGs A -> mids -> B; middle-to-middle edges
// respect the middle index order, so every candidate is acyclic by
// construction.  Candidates at level m are the m-subsets of the edge pool in
// lexicographic order; a partial candidate is cut as soon as it yields a
// reachable pair outside E(G), since extra edges only add reachability.
class RectSearcher {
 public:
  RectSearcher(const BipartiteGraph& g, const RectSearchBudget& budget)
      : g_(g), budget_(budget), na_(g.a_size()), nb_(g.b_size()) {}

  RectSearchResult run() {
    const int m_struct = std::max(1, std::max(na_, nb_));
    long long first_open = -1;  // first level not exhaustively refuted
    for (int m = m_struct; m <= budget_.max_edges; ++m) {
      const int t_need = std::max(0, m - std::max(na_, nb_));
      const int t = std::min(budget_.max_extra_vertices, t_need);
      const bool level_exhaustive = t >= t_need;
      build_edge_pool(t);
      init_state(t);
      target_ = m;
      found_ = false;
      aborted_ = false;
      dfs(0, 0);
      if (found_) {
        RectSearchResult res;
        res.upper = m;
        res.lower = first_open < 0 ? m : first_open;
        res.exact = (res.lower == res.upper);
        res.witness = build_network();
        return res;
      }
      if (aborted_) {
        RectSearchResult res;
        res.lower = first_open < 0 ? m : first_open;
        res.upper = g_.edge_count();
        res.exact = (res.lower == res.upper);
        res.witness = direct_network(g_);
        return res;
      }
      if (!level_exhaustive && first_open < 0) first_open = m;
    }
    RectSearchResult res;
    res.lower = first_open < 0
                    ? std::max<long long>(budget_.max_edges + 1, m_struct)
                    : first_open;
    res.upper = g_.edge_count();
    res.exact = (res.lower == res.upper);
    res.witness = direct_network(g_);
    return res;
  }

 private:
  // vertex ids: [0,na) sources, [na,na+nb) sinks, then middles
  int src(int a) const { return a; }
  int snk(int b) const { return na_ + b; }
  int mid(int i) const { return na_ + nb_ + i; }

  void build_edge_pool(int t) {
    pool_.clear();
    for (int a = 0; a < na_; ++a) {
      for (int b = 0; b < nb_; ++b) pool_.emplace_back(src(a), snk(b));
      for (int i = 0; i < t; ++i) pool_.emplace_back(src(a), mid(i));
    }
    for (int i = 0; i < t; ++i) {
      for (int j = i + 1; j < t; ++j) pool_.emplace_back(mid(i), mid(j));
      for (int b = 0; b < nb_; ++b) pool_.emplace_back(mid(i), snk(b));
    }
  }

  void init_state(int t) {
    t_ = t;
    nverts_ = na_ + nb_ + t;
    out_.assign(nverts_, {});
    cur_edges_.clear();
    outdeg_.assign(nverts_, 0);
    indeg_.assign(nverts_, 0);
    want_.assign(na_, 0u);
    for (auto [a, b] : g_.edges()) want_[a] |= 1u << b;
  }

  // sink-reachability masks, exploiting the fixed acyclic vertex order
  void reach_masks(std::vector<std::uint32_t>& reach) const {
    reach.assign(nverts_, 0);
    for (int b = 0; b < nb_; ++b) reach[snk(b)] = 1u << b;
    for (int i = t_ - 1; i >= 0; --i) {
      for (int w : out_[mid(i)]) reach[mid(i)] |= reach[w];
    }
    for (int a = 0; a < na_; ++a) {
      for (int w : out_[src(a)]) reach[src(a)] |= reach[w];
    }
  }

  bool has_spurious() const {
    std::vector<std::uint32_t> reach;
    reach_masks(reach);
    for (int a = 0; a < na_; ++a) {
      if (reach[src(a)] & ~want_[a]) return true;
    }
    return false;
  }

  bool complete_realization() const {
    std::vector<std::uint32_t> reach;
    reach_masks(reach);
    for (int a = 0; a < na_; ++a) {
      if (reach[src(a)] != want_[a]) return false;
    }
    return true;
  }

  // every source still without an out-edge needs one, every sink without an
  // in-edge needs one; a single jump edge can serve one of each
  int min_needed() const {
    int s0 = 0, t0 = 0;
    for (int a = 0; a < na_; ++a) s0 += outdeg_[src(a)] == 0;
    for (int b = 0; b < nb_; ++b) t0 += indeg_[snk(b)] == 0;
    return std::max(s0, t0);
  }

  void dfs(std::size_t pos, int count) {
    if (found_ || aborted_) return;
    if (++steps_ > budget_.max_steps) {
      aborted_ = true;
      return;
    }
    if (count == target_) {
      if (complete_realization()) {
        found_ = true;
        found_edges_ = cur_edges_;
      }
      return;
    }
    if (pos >= pool_.size()) return;
    if (static_cast<int>(pool_.size() - pos) < target_ - count) return;
    if (min_needed() > target_ - count) return;

    auto [u, v] = pool_[pos];
    out_[u].push_back(v);
    ++outdeg_[u];
    ++indeg_[v];
    cur_edges_.push_back(pool_[pos]);
    if (!has_spurious()) dfs(pos + 1, count + 1);
    out_[u].pop_back();
    --outdeg_[u];
    --indeg_[v];
    cur_edges_.pop_back();
    if (found_ || aborted_) return;

    dfs(pos + 1, count);
  }

  RectifierNetwork build_network() const {
    // keep only middles that carry an edge, renumbering densely
    std::vector<int> mid_map(t_, -1);
    int kept = 0;
    for (auto [u, v] : found_edges_) {
      for (int w : {u, v}) {
        if (w >= na_ + nb_ && mid_map[w - na_ - nb_] < 0) mid_map[w - na_ - nb_] = kept++;
      }
    }
    std::vector<std::string> labels = g_.a_labels();
    labels.insert(labels.end(), g_.b_labels().begin(), g_.b_labels().end());
    std::set<std::string> used(labels.begin(), labels.end());
    auto mids = fresh_labels(used, "x", kept);
    labels.insert(labels.end(), mids.begin(), mids.end());
    auto remap = [&](int w) {
      return w < na_ + nb_ ? w : na_ + nb_ + mid_map[w - na_ - nb_];
    };
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : found_edges_) edges.emplace_back(remap(u), remap(v));
    std::vector<int> sources(na_), sinks(nb_);
    for (int a = 0; a < na_; ++a) sources[a] = a;
    for (int b = 0; b < nb_; ++b) sinks[b] = na_ + b;
    return RectifierNetwork(std::move(labels), std::move(edges), std::move(sources),
                            std::move(sinks));
  }

  const BipartiteGraph& g_;
  RectSearchBudget budget_;
  int na_, nb_, t_ = 0, nverts_ = 0;
  std::vector<std::pair<int, int>> pool_;
  std::vector<std::vector<int>> out_;
  std::vector<std::pair<int, int>> cur_edges_, found_edges_;
  std::vector<int> outdeg_, indeg_;
  std::vector<std::uint32_t> want_;
  int target_ = 0;
  std::uint64_t steps_ = 0;
  bool found_ = false, aborted_ = false;
};

}  // namespace detail

// Oracle for Rect(G) on tiny graphs by smallest-edge-count-first exhaustive
// search. Returns the exact value when every smaller level was refuted within
// budget, otherwise an honest [lower,upper] bracket with a witness network.
// |E|/kappa^2 is deliberately not used as a bound: for kappa < 1 (e.g.
// matchings) it exceeds Rect and would make the bracket wrong.
inline RectSearchResult exact_rect_search(const BipartiteGraph& g,
                                          const RectSearchBudget& budget) {
  if (g.a_size() + g.b_size() > budget.max_graph_vertices) {
    throw resource_limit_error("exact_rect_search guard: |A|+|B| = " +
                               std::to_string(g.a_size() + g.b_size()) + " exceeds " +
                               std::to_string(budget.max_graph_vertices));
  }
  if (g.edge_count() == 0) {
    return RectSearchResult{true, 0, 0, RectifierNetwork({}, {}, {}, {})};
  }
  if (g.b_size() > 32) {
    throw resource_limit_error("exact_rect_search supports at most 32 sink vertices");
  }
  return detail::RectSearcher(g, budget).run();
}

}  // namespace bicov
