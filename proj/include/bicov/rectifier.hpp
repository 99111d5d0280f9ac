#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bicov/biclique_enum.hpp"
#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"

namespace bicov {

// DAG with designated sources (class A) and sinks (class B); realizes a
// bipartite graph by reachability. size = |edges|, depth = longest path.
class RectifierNetwork {
 public:
  RectifierNetwork(std::vector<std::string> labels, std::vector<std::pair<int, int>> edges,
                   std::vector<int> sources, std::vector<int> sinks)
      : labels_(std::move(labels)),
        edges_(std::move(edges)),
        sources_(std::move(sources)),
        sinks_(std::move(sinks)) {
    const int n = static_cast<int>(labels_.size());
    {
      std::set<std::string> seen(labels_.begin(), labels_.end());
      if (static_cast<int>(seen.size()) != n) throw domain_error("duplicate vertex label");
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    out_.assign(n, {});
    in_.assign(n, {});
    for (auto [u, v] : edges_) {
      if (u < 0 || u >= n || v < 0 || v >= n) throw domain_error("edge index out of range");
      if (u == v) throw domain_error("self loop");
      out_[u].push_back(v);
      in_[v].push_back(u);
    }
    std::sort(sources_.begin(), sources_.end());
    std::sort(sinks_.begin(), sinks_.end());
    for (int s : sources_) {
      if (s < 0 || s >= n) throw domain_error("source index out of range");
      if (!in_[s].empty()) {
        throw domain_error("source '" + labels_[s] + "' has an incoming edge");
      }
    }
    for (int t : sinks_) {
      if (t < 0 || t >= n) throw domain_error("sink index out of range");
      if (!out_[t].empty()) {
        throw domain_error("sink '" + labels_[t] + "' has an outgoing edge");
      }
      if (std::binary_search(sources_.begin(), sources_.end(), t)) {
        throw domain_error("vertex '" + labels_[t] + "' is both source and sink");
      }
    }
    topo_order_ = topo_sort();  // throws on a cycle
  }

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& sources() const { return sources_; }
  const std::vector<int>& sinks() const { return sinks_; }
  const std::vector<int>& out_neighbors(int v) const { return out_[v]; }
  const std::vector<int>& in_neighbors(int v) const { return in_[v]; }
  long long size() const { return static_cast<long long>(edges_.size()); }

  // Longest path length, in edges. Jump-edge-only networks have depth 1.
  int depth() const {
    std::vector<int> dist(vertex_count(), 0);
    int best = 0;
    for (int v : topo_order_) {
      for (int w : out_[v]) {
        dist[w] = std::max(dist[w], dist[v] + 1);
        best = std::max(best, dist[w]);
      }
    }
    return best;
  }

  const std::vector<int>& topo_order() const { return topo_order_; }

  // For every vertex, the set of sources that reach it (sources reach
  // themselves) as a bitset indexed by position in sources().
  std::vector<boost::dynamic_bitset<>> ancestor_sources() const {
    std::vector<boost::dynamic_bitset<>> anc(vertex_count(),
                                             boost::dynamic_bitset<>(sources_.size()));
    for (std::size_t i = 0; i < sources_.size(); ++i) anc[sources_[i]].set(i);
    for (int v : topo_order_) {
      for (int w : out_[v]) anc[w] |= anc[v];
    }
    return anc;
  }

  // Symmetric: sinks reachable from every vertex (sinks reach themselves).
  std::vector<boost::dynamic_bitset<>> descendant_sinks() const {
    std::vector<boost::dynamic_bitset<>> desc(vertex_count(),
                                              boost::dynamic_bitset<>(sinks_.size()));
    for (std::size_t i = 0; i < sinks_.size(); ++i) desc[sinks_[i]].set(i);
    for (auto it = topo_order_.rbegin(); it != topo_order_.rend(); ++it) {
      for (int w : out_[*it]) desc[*it] |= desc[w];
    }
    return desc;
  }

 private:
  std::vector<int> topo_sort() const {
    const int n = vertex_count();
    std::vector<int> indeg(n, 0), order;
    for (int v = 0; v < n; ++v) indeg[v] = static_cast<int>(in_[v].size());
    std::priority_queue<int, std::vector<int>, std::greater<>> q;  // stable order
    for (int v = 0; v < n; ++v) {
      if (indeg[v] == 0) q.push(v);
    }
    while (!q.empty()) {
      int v = q.top();
      q.pop();
      order.push_back(v);
      for (int w : out_[v]) {
        if (--indeg[w] == 0) q.push(w);
      }
    }
    if (static_cast<int>(order.size()) != n) {
      throw domain_error("edge relation contains a cycle; rectifier networks are DAGs");
    }
    return order;
  }

  std::vector<std::string> labels_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> sources_;
  std::vector<int> sinks_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<int> topo_order_;
};

struct EdgeCut {
  std::vector<std::pair<int, int>> cut_edges;
};

// Outcome of a realization check; on failure carries one witness pair.
struct RealizesResult {
  bool ok = false;
  bool spurious = false;  // witness kind: reachable but not an edge
  std::string a_label, b_label;
  explicit operator bool() const { return ok; }
};

namespace detail {

// Positions of g's classes inside the network's source/sink lists, by label.
struct ClassMap {
  std::vector<int> a_to_source;  // g A-index -> network vertex
  std::vector<int> b_to_sink;
  std::vector<int> source_pos_to_a;  // position in sources() -> g A-index
  std::vector<int> sink_pos_to_b;
};

inline ClassMap match_classes(const RectifierNetwork& r, const BipartiteGraph& g) {
  std::map<std::string, int> a_idx, b_idx;
  for (int i = 0; i < g.a_size(); ++i) a_idx[g.a_labels()[i]] = i;
  for (int j = 0; j < g.b_size(); ++j) b_idx[g.b_labels()[j]] = j;
  if (r.sources().size() != a_idx.size() || r.sinks().size() != b_idx.size()) {
    throw domain_error("network sources/sinks do not match the graph classes");
  }
  ClassMap m;
  m.a_to_source.assign(g.a_size(), -1);
  m.b_to_sink.assign(g.b_size(), -1);
  m.source_pos_to_a.resize(r.sources().size());
  m.sink_pos_to_b.resize(r.sinks().size());
  for (std::size_t p = 0; p < r.sources().size(); ++p) {
    auto it = a_idx.find(r.labels()[r.sources()[p]]);
    if (it == a_idx.end()) {
      throw domain_error("source label '" + r.labels()[r.sources()[p]] +
                         "' is not an A-class label of the graph");
    }
    m.a_to_source[it->second] = r.sources()[p];
    m.source_pos_to_a[p] = it->second;
  }
  for (std::size_t p = 0; p < r.sinks().size(); ++p) {
    auto it = b_idx.find(r.labels()[r.sinks()[p]]);
    if (it == b_idx.end()) {
      throw domain_error("sink label '" + r.labels()[r.sinks()[p]] +
                         "' is not a B-class label of the graph");
    }
    m.b_to_sink[it->second] = r.sinks()[p];
    m.sink_pos_to_b[p] = it->second;
  }
  return m;
}

// Fresh labels that do not collide with the used set.
inline std::vector<std::string> fresh_labels(std::set<std::string>& used, const std::string& stem,
                                             std::size_t count) {
  std::vector<std::string> out;
  std::size_t next = 1;
  while (out.size() < count) {
    std::string cand = stem + std::to_string(next++);
    while (used.count(cand)) cand = "_" + cand;
    used.insert(cand);
    out.push_back(cand);
  }
  return out;
}

}  // namespace detail

// True iff reachability from sources to sinks matches E(g) exactly; the
// classes are matched by label. On false the result carries a witness.
inline RealizesResult realizes(const RectifierNetwork& r, const BipartiteGraph& g) {
  auto cm = detail::match_classes(r, g);
  auto desc = r.descendant_sinks();
  for (int a = 0; a < g.a_size(); ++a) {
    const auto& reach = desc[cm.a_to_source[a]];
    for (std::size_t p = 0; p < r.sinks().size(); ++p) {
      const int b = cm.sink_pos_to_b[p];
      const bool edge = g.has_edge(a, b);
      if (edge != reach.test(p)) {
        return RealizesResult{false, !edge, g.a_labels()[a], g.b_labels()[b]};
      }
    }
  }
  return RealizesResult{true, false, {}, {}};
}

// Depth-2 network with one middle node per biclique; size equals the cover's
// weight and the result realizes g whenever the cover is valid for g.
inline RectifierNetwork cover_to_depth2(const BipartiteGraph& g, const BicliqueCover& cover) {
  validate_cover(g, cover);
  std::vector<std::string> labels = g.a_labels();
  std::set<std::string> used(labels.begin(), labels.end());
  used.insert(g.b_labels().begin(), g.b_labels().end());
  auto mids = detail::fresh_labels(used, "x", cover.bicliques.size());
  labels.insert(labels.end(), mids.begin(), mids.end());
  const int b_base = static_cast<int>(labels.size());
  labels.insert(labels.end(), g.b_labels().begin(), g.b_labels().end());

  std::vector<std::pair<int, int>> edges;
  std::vector<int> sources(g.a_size()), sinks(g.b_size());
  for (int i = 0; i < g.a_size(); ++i) sources[i] = i;
  for (int j = 0; j < g.b_size(); ++j) sinks[j] = b_base + j;
  for (std::size_t m = 0; m < cover.bicliques.size(); ++m) {
    const int mid = g.a_size() + static_cast<int>(m);
    for (int a : cover.bicliques[m].a) edges.emplace_back(a, mid);
    for (int b : cover.bicliques[m].b) edges.emplace_back(mid, b_base + b);
  }
  return RectifierNetwork(std::move(labels), std::move(edges), std::move(sources),
                          std::move(sinks));
}

// Extracts the cover {K_{A(x),B(x)}} from a depth<=2 network realizing g.
// Jump edges are subdivided first (each becomes its own K_{1,1}); middle nodes
// with an empty ancestor or descendant set are dropped.
inline BicliqueCover depth2_to_cover(const RectifierNetwork& r, const BipartiteGraph& g) {
  if (r.depth() > 2) {
    throw domain_error("network depth " + std::to_string(r.depth()) +
                       " exceeds 2; cover extraction needs a depth-2 network");
  }
  if (auto res = realizes(r, g); !res) {
    throw domain_error("network does not realize the given graph (pair " + res.a_label + "," +
                       res.b_label + (res.spurious ? " spurious)" : " missing)"));
  }
  auto cm = detail::match_classes(r, g);
  auto anc = r.ancestor_sources();
  auto desc = r.descendant_sinks();
  std::vector<bool> is_source(r.vertex_count(), false), is_sink(r.vertex_count(), false);
  for (int s : r.sources()) is_source[s] = true;
  for (int t : r.sinks()) is_sink[t] = true;

  BicliqueCover cover;
  for (auto [u, v] : r.edges()) {
    if (is_source[u] && is_sink[v]) {
      // subdivided jump edge
      auto a = std::find(cm.a_to_source.begin(), cm.a_to_source.end(), u);
      auto b = std::find(cm.b_to_sink.begin(), cm.b_to_sink.end(), v);
      cover.bicliques.emplace_back(
          std::vector<int>{static_cast<int>(a - cm.a_to_source.begin())},
          std::vector<int>{static_cast<int>(b - cm.b_to_sink.begin())});
    }
  }
  for (int x = 0; x < r.vertex_count(); ++x) {
    if (is_source[x] || is_sink[x]) continue;
    if (anc[x].none() || desc[x].none()) continue;  // dead middle node
    std::vector<int> a_set, b_set;
    for (auto p = anc[x].find_first(); p != boost::dynamic_bitset<>::npos;
         p = anc[x].find_next(p)) {
      a_set.push_back(cm.source_pos_to_a[p]);
    }
    for (auto p = desc[x].find_first(); p != boost::dynamic_bitset<>::npos;
         p = desc[x].find_next(p)) {
      b_set.push_back(cm.sink_pos_to_b[p]);
    }
    cover.bicliques.emplace_back(std::move(a_set), std::move(b_set));
  }
  cover.canonicalize();
  validate_cover(g, cover);
  return cover;
}

// Cut-covering C(E0) = {K_{A(x),B(y)} : (x,y) in E0}. Verifies the cut
// property by removing the cut edges and checking that no source reaches a
// sink; a surviving path is reported as the witness.
inline BicliqueCover cut_cover(const RectifierNetwork& r, const EdgeCut& cut,
                               const BipartiteGraph& g) {
  if (auto res = realizes(r, g); !res) {
    throw domain_error("cut_cover requires a network realizing the graph (pair " + res.a_label +
                       "," + res.b_label + (res.spurious ? " spurious)" : " missing)"));
  }
  std::set<std::pair<int, int>> cut_set(cut.cut_edges.begin(), cut.cut_edges.end());
  for (auto e : cut_set) {
    if (!std::binary_search(r.edges().begin(), r.edges().end(), e)) {
      throw domain_error("cut contains a non-edge of the network");
    }
  }
  // residual reachability check
  std::vector<int> parent(r.vertex_count(), -1), state(r.vertex_count(), 0);
  std::vector<int> stack;
  for (int s : r.sources()) {
    if (!state[s]) {
      state[s] = 1;
      stack.push_back(s);
    }
  }
  std::vector<bool> is_sink(r.vertex_count(), false);
  for (int t : r.sinks()) is_sink[t] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (is_sink[v]) {
      std::string path = r.labels()[v];
      for (int u = parent[v]; u != -1; u = parent[u]) path = r.labels()[u] + "->" + path;
      throw validation_error("edge set is not a cut: a source-to-sink path avoids it", path);
    }
    for (int w : r.out_neighbors(v)) {
      if (cut_set.count({v, w}) || state[w]) continue;
      state[w] = 1;
      parent[w] = v;
      stack.push_back(w);
    }
  }
  auto cm = detail::match_classes(r, g);
  auto anc = r.ancestor_sources();
  auto desc = r.descendant_sinks();
  BicliqueCover cover;
  for (auto [x, y] : cut_set) {
    if (anc[x].none() || desc[y].none()) continue;  // edge on no live path
    std::vector<int> a_set, b_set;
    for (auto p = anc[x].find_first(); p != boost::dynamic_bitset<>::npos;
         p = anc[x].find_next(p)) {
      a_set.push_back(cm.source_pos_to_a[p]);
    }
    for (auto p = desc[y].find_first(); p != boost::dynamic_bitset<>::npos;
         p = desc[y].find_next(p)) {
      b_set.push_back(cm.sink_pos_to_b[p]);
    }
    cover.bicliques.emplace_back(std::move(a_set), std::move(b_set));
  }
  cover.canonicalize();
  validate_cover(g, cover);
  return cover;
}

// Cover {K_{A(u),B(v)} : (u,v) eligible}, where an edge is eligible iff
// |A(u)| <= k and |B(v)| <= k for k the largest balanced biclique side.
// Coverage is guaranteed for any network realizing g; a failure here would
// falsify the underlying claim, hence the loud error class.
inline BicliqueCover eligible_edge_cover(const RectifierNetwork& r, const BipartiteGraph& g,
                                         std::uint64_t guard = kDefaultEnumGuard) {
  if (auto res = realizes(r, g); !res) {
    throw domain_error("eligible_edge_cover requires a network realizing the graph (pair " +
                       res.a_label + "," + res.b_label +
                       (res.spurious ? " spurious)" : " missing)"));
  }
  const int k = max_balanced_k(g, guard);
  auto cm = detail::match_classes(r, g);
  auto anc = r.ancestor_sources();
  auto desc = r.descendant_sinks();
  BicliqueCover cover;
  for (auto [u, v] : r.edges()) {
    const auto ca = anc[u].count(), cb = desc[v].count();
    if (ca == 0 || cb == 0) continue;
    if (ca > static_cast<std::size_t>(k) || cb > static_cast<std::size_t>(k)) continue;
    std::vector<int> a_set, b_set;
    for (auto p = anc[u].find_first(); p != boost::dynamic_bitset<>::npos;
         p = anc[u].find_next(p)) {
      a_set.push_back(cm.source_pos_to_a[p]);
    }
    for (auto p = desc[v].find_first(); p != boost::dynamic_bitset<>::npos;
         p = desc[v].find_next(p)) {
      b_set.push_back(cm.sink_pos_to_b[p]);
    }
    cover.bicliques.emplace_back(std::move(a_set), std::move(b_set));
  }
  cover.canonicalize();
  try {
    validate_cover(g, cover);
  } catch (const validation_error& e) {
    throw theorem_violation(std::string("eligible-edge extraction failed to produce a cover: ") +
                            e.what());
  }
  if (cover.weight() > 2LL * k * r.size()) {
    throw theorem_violation("eligible-edge cover weight exceeds 2k * size");
  }
  return cover;
}

// Direct-edge realization of g: one jump edge per graph edge. The trivial
// witness that Rect(G) <= |E(G)|.
inline RectifierNetwork direct_network(const BipartiteGraph& g) {
  std::vector<std::string> labels = g.a_labels();
  labels.insert(labels.end(), g.b_labels().begin(), g.b_labels().end());
  std::vector<std::pair<int, int>> edges;
  for (auto [a, b] : g.edges()) edges.emplace_back(a, g.a_size() + b);
  std::vector<int> sources(g.a_size()), sinks(g.b_size());
  for (int i = 0; i < g.a_size(); ++i) sources[i] = i;
  for (int j = 0; j < g.b_size(); ++j) sinks[j] = g.a_size() + j;
  return RectifierNetwork(std::move(labels), std::move(edges), std::move(sources),
                          std::move(sinks));
}

}  // namespace bicov
