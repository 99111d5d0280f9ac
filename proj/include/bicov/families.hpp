#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"
#include "bicov/rectifier.hpp"

namespace bicov {

// Joint position-count signature of a pair of bit vectors: entry (a<<1|b)
// counts the positions where u is a and v is b. Entries sum to the dimension.
using Signature = std::array<int, 4>;

inline Signature signature(std::uint32_t u, std::uint32_t v, int d) {
  Signature c{0, 0, 0, 0};
  for (int i = 0; i < d; ++i) {
    c[((u >> i & 1) << 1) | (v >> i & 1)] += 1;
  }
  return c;
}

inline Signature signature(const std::string& u_bits, const std::string& v_bits) {
  if (u_bits.size() != v_bits.size()) {
    throw domain_error("signature needs bit vectors of equal length");
  }
  Signature c{0, 0, 0, 0};
  for (std::size_t i = 0; i < u_bits.size(); ++i) {
    const char a = u_bits[i], b = v_bits[i];
    if ((a != '0' && a != '1') || (b != '0' && b != '1')) {
      throw domain_error("signature arguments must be 0/1 strings");
    }
    c[((a - '0') << 1) | (b - '0')] += 1;
  }
  return c;
}

namespace detail {

inline std::string bits_string(std::uint32_t v, int d) {
  std::string s(d, '0');
  for (int i = 0; i < d; ++i) {
    if (v >> i & 1) s[i] = '1';
  }
  return s;
}

// Bit part of a vertex label: the label with its leading class tag stripped.
inline std::string label_bits(const std::string& label) {
  std::size_t k = 0;
  while (k < label.size() && label[k] != '0' && label[k] != '1') ++k;
  std::string bits = label.substr(k);
  for (char ch : bits) {
    if (ch != '0' && ch != '1') {
      throw domain_error("label '" + label + "' does not end in a bit string");
    }
  }
  if (bits.empty()) throw domain_error("label '" + label + "' carries no bit string");
  return bits;
}

inline std::uint32_t bits_value(const std::string& bits) {
  std::uint32_t v = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') v |= std::uint32_t(1) << i;
  }
  return v;
}

}  // namespace detail

// G^d_orth: classes are all d-bit vectors, edge (u,v) iff the inner product
// over Z_2 vanishes. Defined for even d only.
inline BipartiteGraph orthogonality_graph(int d, int max_d = 10) {
  if (d < 2 || d % 2 != 0) {
    throw domain_error("orthogonality graph needs an even dimension d >= 2");
  }
  if (d > max_d) {
    throw resource_limit_error("orthogonality graph guard: d = " + std::to_string(d) +
                               " exceeds " + std::to_string(max_d));
  }
  const std::uint32_t n = std::uint32_t(1) << d;
  std::vector<std::string> a(n), b(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    a[v] = "u" + detail::bits_string(v, d);
    b[v] = "v" + detail::bits_string(v, d);
  }
  std::vector<std::pair<int, int>> edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (std::popcount(u & v) % 2 == 0) edges.emplace_back(u, v);
    }
  }
  return BipartiteGraph(std::move(a), std::move(b), edges);
}

// G_delta^n: classes [n], edge (i,j) iff the circular distance
// min(|i-j|, n-|i-j|) is at most floor(n/4).
inline BipartiteGraph circulant_quarter_graph(int n) {
  if (n < 4) throw domain_error("circulant quarter graph needs n >= 4");
  const int threshold = n / 4;
  std::vector<std::string> a(n), b(n);
  for (int k = 0; k < n; ++k) {
    a[k] = "i" + std::to_string(k + 1);
    b[k] = "j" + std::to_string(k + 1);
  }
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int diff = i > j ? i - j : j - i;
      if (std::min(diff, n - diff) <= threshold) edges.emplace_back(i, j);
    }
  }
  return BipartiteGraph(std::move(a), std::move(b), edges);
}

inline BipartiteGraph matching_graph(int n) {
  if (n < 1) throw domain_error("matching needs n >= 1");
  std::vector<std::string> a(n), b(n);
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < n; ++k) {
    a[k] = "a" + std::to_string(k + 1);
    b[k] = "b" + std::to_string(k + 1);
    edges.emplace_back(k, k);
  }
  return BipartiteGraph(std::move(a), std::move(b), edges);
}

// Bernoulli(p) edges from a seeded generator. Draws raw 53-bit words rather
// than a std distribution, so identical seeds give identical graphs on every
// platform. Isolated vertices are stripped by the graph constructor.
inline BipartiteGraph random_bipartite(int na, int nb, double p, std::uint64_t seed) {
  if (na < 1 || nb < 1) throw domain_error("random graph needs nonempty classes");
  if (!(p >= 0.0 && p <= 1.0)) throw domain_error("edge probability must lie in [0,1]");
  std::vector<std::string> a(na), b(nb);
  for (int i = 0; i < na; ++i) a[i] = "a" + std::to_string(i + 1);
  for (int j = 0; j < nb; ++j) b[j] = "b" + std::to_string(j + 1);
  const auto threshold =
      static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53, saturating
  std::mt19937_64 gen(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      if ((gen() >> 11) < threshold) edges.emplace_back(i, j);
    }
  }
  return BipartiteGraph(std::move(a), std::move(b), edges);
}

// The graph over {0,1}^d x {0,1}^d whose edge relation is membership of the
// pair signature in C.
inline BipartiteGraph graph_from_signatures(int d, const std::set<Signature>& C) {
  const std::uint32_t n = std::uint32_t(1) << d;
  std::vector<std::string> a(n), b(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    a[v] = "u" + detail::bits_string(v, d);
    b[v] = "v" + detail::bits_string(v, d);
  }
  std::vector<std::pair<int, int>> edges;
  for (std::uint32_t u = 0; u < n; ++u) {
    for (std::uint32_t v = 0; v < n; ++v) {
      if (C.count(signature(u, v, d))) edges.emplace_back(u, v);
    }
  }
  return BipartiteGraph(std::move(a), std::move(b), edges);
}

// Signatures of G^d_orth: the inner product mod 2 is c11 mod 2, so membership
// is "c11 even".
inline std::set<Signature> orthogonal_signature_set(int d) {
  std::set<Signature> out;
  for (int c00 = 0; c00 <= d; ++c00) {
    for (int c01 = 0; c00 + c01 <= d; ++c01) {
      for (int c10 = 0; c00 + c01 + c10 <= d; ++c10) {
        const int c11 = d - c00 - c01 - c10;
        if (c11 % 2 == 0) out.insert(Signature{c00, c01, c10, c11});
      }
    }
  }
  return out;
}

struct PermInvarianceResult {
  bool invariant = false;
  std::set<Signature> signatures;  // the set C when invariant
  std::string witness;             // two equal-signature pairs with different membership
};

// Checks that edge membership factors through the signature function; both
// classes must be exactly {0,1}^d (labels carry a class tag before the bits).
inline PermInvarianceResult is_permutation_invariant(const BipartiteGraph& g) {
  auto parse_class = [](const std::vector<std::string>& labels) {
    if (labels.empty()) throw domain_error("empty vertex class");
    const std::string first = detail::label_bits(labels.front());
    const int d = static_cast<int>(first.size());
    if (labels.size() != (std::size_t(1) << d)) {
      throw domain_error("class is not a full set of " + std::to_string(d) + "-bit vectors");
    }
    std::vector<std::uint32_t> vals(labels.size());
    std::set<std::uint32_t> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string bits = detail::label_bits(labels[i]);
      if (static_cast<int>(bits.size()) != d) {
        throw domain_error("labels carry bit strings of mixed length");
      }
      vals[i] = detail::bits_value(bits);
      if (!seen.insert(vals[i]).second) {
        throw domain_error("duplicate bit vector in a class: " + labels[i]);
      }
    }
    return std::pair<int, std::vector<std::uint32_t>>(d, std::move(vals));
  };
  auto [da, a_vals] = parse_class(g.a_labels());
  auto [db, b_vals] = parse_class(g.b_labels());
  if (da != db) throw domain_error("classes have different dimensions");

  PermInvarianceResult res;
  std::map<Signature, std::pair<bool, std::pair<int, int>>> first_seen;
  for (int i = 0; i < g.a_size(); ++i) {
    for (int j = 0; j < g.b_size(); ++j) {
      const Signature sig = signature(a_vals[i], b_vals[j], da);
      const bool member = g.has_edge(i, j);
      auto [it, inserted] = first_seen.try_emplace(sig, member, std::make_pair(i, j));
      if (!inserted && it->second.first != member) {
        res.invariant = false;
        const auto [pi, pj] = it->second.second;
        res.witness = "(" + g.a_labels()[pi] + "," + g.b_labels()[pj] + ") vs (" +
                      g.a_labels()[i] + "," + g.b_labels()[j] + ")";
        return res;
      }
    }
  }
  res.invariant = true;
  for (const auto& [sig, info] : first_seen) {
    if (info.first) res.signatures.insert(sig);
  }
  return res;
}

// Closed-form edge count of the unpruned layered construction: every node
// below the last layer has outdegree 2, plus the final membership edges.
inline long long perm_network_unpruned_size(int d, std::size_t c_size) {
  const long long pow2d = 1LL << d;
  long long layers = 1;
  for (int i = 0; i < 4; ++i) layers *= (d + 1);
  return 2LL * d * layers * pow2d + pow2d * static_cast<long long>(c_size);
}

struct PermNetwork {
  RectifierNetwork network;        // pruned to live nodes
  std::vector<int> layer;          // per network vertex; sources 0, sinks d+1
  BipartiteGraph graph;            // the realized graph (normalized)
  long long unpruned_edges;
};

namespace detail {

struct PermNodeKey {
  std::uint32_t vec;
  Signature f;
  int layer;
  friend bool operator<(const PermNodeKey& x, const PermNodeKey& y) {
    return std::tie(x.layer, x.vec, x.f) < std::tie(y.layer, y.vec, y.f);
  }
};

}  // namespace detail

// The layered rectifier network for a permutation-invariant graph: nodes
// (vector, count function, layer); step ell rewrites coordinate ell and
// increments the matching count; final edges go to the sinks whose signature
// lies in C. Restricted to nodes on live source-to-sink paths; the realized
// graph is unchanged and layer counts stay tractable.
inline PermNetwork build_perm_invariant_network(int d, const std::set<Signature>& C) {
  if (d < 1 || d > 16) throw domain_error("network construction supports 1 <= d <= 16");
  for (const auto& sig : C) {
    int total = 0;
    for (int v : sig) {
      if (v < 0) throw domain_error("signature with a negative count");
      total += v;
    }
    if (total != d) throw domain_error("signature counts must sum to d");
  }
  using detail::PermNodeKey;
  const std::uint32_t n = std::uint32_t(1) << d;

  std::map<PermNodeKey, int> ids;
  std::vector<PermNodeKey> nodes;
  auto intern = [&](const PermNodeKey& k) {
    auto [it, inserted] = ids.try_emplace(k, static_cast<int>(nodes.size()));
    if (inserted) nodes.push_back(k);
    return it->second;
  };

  std::vector<std::pair<int, int>> raw_edges;
  // forward generation, layer by layer
  std::vector<int> frontier;
  for (std::uint32_t u = 0; u < n; ++u) {
    frontier.push_back(intern({u, Signature{0, 0, 0, 0}, 0}));
  }
  for (int ell = 0; ell < d; ++ell) {
    std::vector<int> next;
    for (int id : frontier) {
      const PermNodeKey node = nodes[id];
      const int a = node.vec >> ell & 1;
      for (int b = 0; b < 2; ++b) {
        PermNodeKey succ;
        succ.vec = (node.vec & ~(std::uint32_t(1) << ell)) | (std::uint32_t(b) << ell);
        succ.f = node.f;
        succ.f[(a << 1) | b] += 1;
        succ.layer = ell + 1;
        const int sid = intern(succ);
        raw_edges.emplace_back(id, sid);
        next.push_back(sid);
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    frontier = std::move(next);
  }
  // final membership edges into the sink copy of {0,1}^d
  const int sink_base = static_cast<int>(nodes.size());
  std::vector<bool> sink_used(n, false);
  for (int id : frontier) {
    if (C.count(nodes[id].f)) {
      raw_edges.emplace_back(id, sink_base + static_cast<int>(nodes[id].vec));
      sink_used[nodes[id].vec] = true;
    }
  }

  // backward prune: keep inner nodes that reach a used sink
  std::vector<std::vector<int>> rev(nodes.size());
  std::vector<bool> live(nodes.size() + n, false);
  for (auto [u, v] : raw_edges) {
    if (v >= sink_base) {
      live[u] = true;  // feeds a sink directly
      live[v] = true;
    } else {
      rev[v].push_back(u);
    }
  }
  for (int ell = d; ell >= 1; --ell) {
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      if (nodes[id].layer == ell && live[id]) {
        for (int p : rev[id]) live[p] = true;
      }
    }
  }

  // assemble the pruned network, vertices in deterministic order
  std::vector<int> vertex_of(nodes.size() + n, -1);
  std::vector<std::string> labels;
  std::vector<int> layer_of;
  std::vector<int> sources, sinks;
  for (std::size_t id = 0; id < nodes.size(); ++id) {
    if (!live[id]) continue;
    const auto& k = nodes[id];
    std::string label;
    if (k.layer == 0) {
      label = "u" + detail::bits_string(k.vec, d);
    } else {
      label = "m" + std::to_string(k.layer) + "_" + detail::bits_string(k.vec, d) + "_" +
              std::to_string(k.f[0]) + "." + std::to_string(k.f[1]) + "." +
              std::to_string(k.f[2]) + "." + std::to_string(k.f[3]);
    }
    vertex_of[id] = static_cast<int>(labels.size());
    labels.push_back(std::move(label));
    layer_of.push_back(k.layer);
    if (k.layer == 0) sources.push_back(vertex_of[id]);
  }
  for (std::uint32_t v = 0; v < n; ++v) {
    if (!sink_used[v]) continue;
    vertex_of[sink_base + v] = static_cast<int>(labels.size());
    labels.push_back("v" + detail::bits_string(v, d));
    layer_of.push_back(d + 1);
    sinks.push_back(vertex_of[sink_base + v]);
  }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : raw_edges) {
    if (live[u] && live[v] && vertex_of[u] >= 0 && vertex_of[v] >= 0) {
      edges.emplace_back(vertex_of[u], vertex_of[v]);
    }
  }

  PermNetwork out{RectifierNetwork(std::move(labels), std::move(edges), std::move(sources),
                                   std::move(sinks)),
                  std::move(layer_of), graph_from_signatures(d, C),
                  perm_network_unpruned_size(d, C.size())};
  if (out.network.size() > out.unpruned_edges) {
    throw theorem_violation("pruned layered network larger than the closed-form edge count");
  }
  return out;
}

inline RectifierNetwork perm_invariant_network(int d, const std::set<Signature>& C) {
  return build_perm_invariant_network(d, C).network;
}

// Cut-covering through the middle layer d/2: one biclique K_{A(x),B(x)} per
// middle-layer node x. Every source-to-sink path meets the layer, so this is
// always a covering of the realized graph.
inline BicliqueCover midpoint_cut_cover(int d, const std::set<Signature>& C) {
  if (d % 2 != 0) throw domain_error("midpoint cover needs an even dimension");
  PermNetwork pn = build_perm_invariant_network(d, C);
  auto cm = detail::match_classes(pn.network, pn.graph);
  auto anc = pn.network.ancestor_sources();
  auto desc = pn.network.descendant_sinks();
  BicliqueCover cover;
  for (int x = 0; x < pn.network.vertex_count(); ++x) {
    if (pn.layer[x] != d / 2) continue;
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
  validate_cover(pn.graph, cover);
  return cover;
}

// Upper bound asserted for the midpoint cover weight, exactly evaluated:
// 2^d (d+1)^4 (2^{d/2} + 2^{d/2} (d+1)^4).
inline long long midpoint_weight_bound(int d) {
  long long poly = 1;
  for (int i = 0; i < 4; ++i) poly *= (d + 1);
  const long long half = 1LL << (d / 2);
  return (1LL << d) * poly * (half + half * poly);
}

// CLI-facing family specs: "orthogonal:d", "circulant:n", "matching:n",
// "random:na,nb,p,seed".
inline BipartiteGraph parse_family(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw domain_error("family spec needs the form name:params, got '" + spec + "'");
  }
  const std::string name = spec.substr(0, colon);
  const std::string params = spec.substr(colon + 1);
  try {
    if (name == "orthogonal") return orthogonality_graph(std::stoi(params));
    if (name == "circulant") return circulant_quarter_graph(std::stoi(params));
    if (name == "matching") return matching_graph(std::stoi(params));
    if (name == "random") {
      std::vector<std::string> parts;
      std::size_t start = 0;
      while (true) {
        auto comma = params.find(',', start);
        parts.push_back(params.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (parts.size() != 4) {
        throw domain_error("random family needs na,nb,p,seed");
      }
      return random_bipartite(std::stoi(parts[0]), std::stoi(parts[1]), std::stod(parts[2]),
                              std::stoull(parts[3]));
    }
  } catch (const std::invalid_argument&) {
    throw domain_error("malformed family parameters in '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw domain_error("family parameter out of range in '" + spec + "'");
  }
  throw domain_error("unknown family '" + name +
                     "' (expected orthogonal, circulant, matching or random)");
}

}  // namespace bicov
