#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bicov/errors.hpp"
#include "bicov/rational.hpp"

namespace bicov {

// Complete bipartite subgraph, stored as sorted index lists into the host
// graph's classes. This is the canonical form used for deduplication.
struct Biclique {
  std::vector<int> a;
  std::vector<int> b;

  Biclique() = default;
  Biclique(std::vector<int> a_set, std::vector<int> b_set)
      : a(std::move(a_set)), b(std::move(b_set)) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
  }

  long long weight() const { return static_cast<long long>(a.size() + b.size()); }

  friend bool operator==(const Biclique& x, const Biclique& y) {
    return x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const Biclique& x, const Biclique& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  }
};

struct BicliqueCover {
  std::vector<Biclique> bicliques;

  long long weight() const {
    long long w = 0;
    for (const auto& bc : bicliques) w += bc.weight();
    return w;
  }
  // Sorted, deduplicated form; duplicates only ever lower the weight.
  void canonicalize() {
    std::sort(bicliques.begin(), bicliques.end());
    bicliques.erase(std::unique(bicliques.begin(), bicliques.end()), bicliques.end());
  }
};

// Bipartite graph over two ordered label classes. Construction normalizes:
// isolated vertices are stripped (they affect neither Cov nor Rect) and their
// labels recorded. Instances are immutable afterwards and safe to share.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;

  BipartiteGraph(std::vector<std::string> a_labels, std::vector<std::string> b_labels,
                 const std::vector<std::pair<int, int>>& edge_list) {
    check_labels(a_labels, b_labels);
    const int na = static_cast<int>(a_labels.size());
    const int nb = static_cast<int>(b_labels.size());
    std::set<std::pair<int, int>> uniq;
    for (auto [ai, bi] : edge_list) {
      if (ai < 0 || ai >= na || bi < 0 || bi >= nb) {
        throw domain_error("edge references an out-of-range vertex index");
      }
      uniq.insert({ai, bi});
    }
    std::vector<bool> a_used(na, false), b_used(nb, false);
    for (auto [ai, bi] : uniq) {
      a_used[ai] = true;
      b_used[bi] = true;
    }
    std::vector<int> a_map(na, -1), b_map(nb, -1);
    for (int i = 0; i < na; ++i) {
      if (a_used[i]) {
        a_map[i] = static_cast<int>(a_labels_.size());
        a_labels_.push_back(a_labels[i]);
      } else {
        stripped_.push_back(a_labels[i]);
      }
    }
    for (int j = 0; j < nb; ++j) {
      if (b_used[j]) {
        b_map[j] = static_cast<int>(b_labels_.size());
        b_labels_.push_back(b_labels[j]);
      } else {
        stripped_.push_back(b_labels[j]);
      }
    }
    a_adj_.assign(a_labels_.size(), boost::dynamic_bitset<>(b_labels_.size()));
    b_adj_.assign(b_labels_.size(), boost::dynamic_bitset<>(a_labels_.size()));
    for (auto [ai, bi] : uniq) {
      edges_.emplace_back(a_map[ai], b_map[bi]);
      a_adj_[a_map[ai]].set(b_map[bi]);
      b_adj_[b_map[bi]].set(a_map[ai]);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  static BipartiteGraph from_label_edges(
      const std::vector<std::string>& a_labels, const std::vector<std::string>& b_labels,
      const std::vector<std::pair<std::string, std::string>>& labeled_edges) {
    std::vector<std::pair<int, int>> idx;
    idx.reserve(labeled_edges.size());
    for (const auto& [la, lb] : labeled_edges) {
      auto ita = std::find(a_labels.begin(), a_labels.end(), la);
      auto itb = std::find(b_labels.begin(), b_labels.end(), lb);
      if (ita == a_labels.end() || itb == b_labels.end()) {
        throw domain_error("edge label not found in vertex classes: (" + la + "," + lb + ")");
      }
      idx.emplace_back(static_cast<int>(ita - a_labels.begin()),
                       static_cast<int>(itb - b_labels.begin()));
    }
    return BipartiteGraph(a_labels, b_labels, idx);
  }

  int a_size() const { return static_cast<int>(a_labels_.size()); }
  int b_size() const { return static_cast<int>(b_labels_.size()); }
  const std::vector<std::string>& a_labels() const { return a_labels_; }
  const std::vector<std::string>& b_labels() const { return b_labels_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  long long edge_count() const { return static_cast<long long>(edges_.size()); }
  const std::vector<std::string>& stripped_labels() const { return stripped_; }

  bool has_edge(int a, int b) const { return a_adj_[a].test(b); }
  // Neighborhood of an A-vertex as a bitset over B, and vice versa.
  const boost::dynamic_bitset<>& neighbors_of_a(int a) const { return a_adj_[a]; }
  const boost::dynamic_bitset<>& neighbors_of_b(int b) const { return b_adj_[b]; }

  bool is_biclique(const Biclique& bc) const {
    if (bc.a.empty() || bc.b.empty()) return false;
    for (int a : bc.a) {
      if (a < 0 || a >= a_size()) return false;
      for (int b : bc.b) {
        if (b < 0 || b >= b_size() || !has_edge(a, b)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const BipartiteGraph& x, const BipartiteGraph& y) {
    return x.a_labels_ == y.a_labels_ && x.b_labels_ == y.b_labels_ && x.edges_ == y.edges_;
  }

 private:
  static void check_labels(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> seen;
    for (const auto& l : a) {
      if (!seen.insert(l).second) throw domain_error("duplicate vertex label: " + l);
    }
    for (const auto& l : b) {
      if (!seen.insert(l).second) {
        throw domain_error("label appears in both classes or twice: " + l);
      }
    }
  }

  std::vector<std::string> a_labels_;
  std::vector<std::string> b_labels_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<boost::dynamic_bitset<>> a_adj_;
  std::vector<boost::dynamic_bitset<>> b_adj_;
  std::vector<std::string> stripped_;
};

// Checks that every member is a biclique of g and every edge of g is covered.
// Returns the total weight. Throws validation_error with a witness otherwise.
inline long long validate_cover(const BipartiteGraph& g, const BicliqueCover& cover) {
  boost::dynamic_bitset<> covered(g.edges().size());
  long long weight = 0;
  for (std::size_t i = 0; i < cover.bicliques.size(); ++i) {
    const Biclique& bc = cover.bicliques[i];
    if (bc.a.empty() || bc.b.empty()) {
      throw validation_error("cover member #" + std::to_string(i) + " has an empty side");
    }
    for (int a : bc.a) {
      for (int b : bc.b) {
        if (a < 0 || a >= g.a_size() || b < 0 || b >= g.b_size() || !g.has_edge(a, b)) {
          throw validation_error(
              "cover member #" + std::to_string(i) + " is not a biclique of the graph",
              "(" + (a >= 0 && a < g.a_size() ? g.a_labels()[a] : std::to_string(a)) + "," +
                  (b >= 0 && b < g.b_size() ? g.b_labels()[b] : std::to_string(b)) + ")");
        }
      }
    }
    weight += bc.weight();
  }
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto [a, b] = g.edges()[e];
    for (const auto& bc : cover.bicliques) {
      if (std::binary_search(bc.a.begin(), bc.a.end(), a) &&
          std::binary_search(bc.b.begin(), bc.b.end(), b)) {
        covered.set(e);
        break;
      }
    }
    if (!covered.test(e)) {
      throw validation_error("edge not covered",
                             "(" + g.a_labels()[a] + "," + g.b_labels()[b] + ")");
    }
  }
  return weight;
}

}  // namespace bicov
