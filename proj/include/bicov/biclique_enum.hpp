#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"
#include "bicov/rational.hpp"

namespace bicov {

// Default cap on candidate subsets / closure computations for the exhaustive
// enumerations below.
inline constexpr std::uint64_t kDefaultEnumGuard = std::uint64_t(1) << 22;

namespace detail {

using Bits = boost::dynamic_bitset<>;

// Adjacency restricted to an induced subgraph; identity restriction by default.
struct SubAdjacency {
  std::vector<Bits> a_nbr;  // per kept A-vertex, neighbors among kept B
  std::vector<int> a_ids;   // kept A indices in the host graph
  std::vector<int> b_ids;

  static SubAdjacency full(const BipartiteGraph& g) {
    SubAdjacency s;
    s.a_ids.resize(g.a_size());
    s.b_ids.resize(g.b_size());
    for (int i = 0; i < g.a_size(); ++i) s.a_ids[i] = i;
    for (int j = 0; j < g.b_size(); ++j) s.b_ids[j] = j;
    s.a_nbr.reserve(g.a_size());
    for (int i = 0; i < g.a_size(); ++i) s.a_nbr.push_back(g.neighbors_of_a(i));
    return s;
  }

  static SubAdjacency induced(const BipartiteGraph& g, const Bits& a_keep, const Bits& b_keep) {
    SubAdjacency s;
    std::vector<int> b_map(g.b_size(), -1);
    for (auto j = b_keep.find_first(); j != Bits::npos; j = b_keep.find_next(j)) {
      b_map[j] = static_cast<int>(s.b_ids.size());
      s.b_ids.push_back(static_cast<int>(j));
    }
    for (auto i = a_keep.find_first(); i != Bits::npos; i = a_keep.find_next(i)) {
      Bits row(s.b_ids.size());
      const Bits& full_row = g.neighbors_of_a(static_cast<int>(i));
      for (std::size_t k = 0; k < s.b_ids.size(); ++k) {
        if (full_row.test(s.b_ids[k])) row.set(k);
      }
      s.a_ids.push_back(static_cast<int>(i));
      s.a_nbr.push_back(std::move(row));
    }
    return s;
  }

  long long edge_total() const {
    long long e = 0;
    for (const auto& row : a_nbr) e += static_cast<long long>(row.count());
    return e;
  }
};

// Common neighborhood of an A-subset (all of B for the empty subset).
inline Bits common_b(const SubAdjacency& adj, const Bits& a_set) {
  Bits out(adj.a_nbr.empty() ? 0 : adj.a_nbr.front().size());
  out.set();
  if (adj.a_nbr.empty()) return out;
  for (auto i = a_set.find_first(); i != Bits::npos; i = a_set.find_next(i)) {
    out &= adj.a_nbr[i];
  }
  return out;
}

inline Bits common_a(const SubAdjacency& adj, const Bits& b_set) {
  Bits out(adj.a_nbr.size());
  for (std::size_t i = 0; i < adj.a_nbr.size(); ++i) {
    bool all = true;
    for (auto j = b_set.find_first(); j != Bits::npos; j = b_set.find_next(j)) {
      if (!adj.a_nbr[i].test(j)) {
        all = false;
        break;
      }
    }
    if (all) out.set(i);
  }
  return out;
}

// Enumerates all concepts (A', B') with A' = N(B'), B' = N(A') via Ganter's
// NextClosure over closed A-subsets, in lectic order. Concepts with an empty
// side are skipped; the remainder are exactly the inclusion-maximal bicliques.
// The guard counts closure computations.
template <typename Yield>
void next_closure_concepts(const SubAdjacency& adj, std::uint64_t guard, Yield&& yield) {
  const std::size_t n = adj.a_nbr.size();
  std::uint64_t closures = 0;
  auto close = [&](const Bits& s) {
    if (++closures > guard) {
      throw resource_limit_error("maximal biclique enumeration exceeded the candidate guard (" +
                                 std::to_string(guard) + " closures)");
    }
    return common_a(adj, common_b(adj, s));
  };
  Bits cur = close(Bits(n));
  for (;;) {
    Bits b_side = common_b(adj, cur);
    if (cur.any() && b_side.any()) yield(cur, b_side);
    if (cur.count() == n) break;
    bool advanced = false;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
      if (cur.test(i)) continue;
      Bits probe(n);
      for (int k = 0; k < i; ++k) {
        if (cur.test(k)) probe.set(k);
      }
      probe.set(i);
      Bits cand = close(probe);
      // lectic condition: no new element below i
      bool ok = true;
      for (int k = 0; k < i; ++k) {
        if (cand.test(k) && !cur.test(k)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        cur = std::move(cand);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
}

inline std::vector<int> bits_to_ids(const Bits& bits, const std::vector<int>& ids) {
  std::vector<int> out;
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    out.push_back(ids[i]);
  }
  return out;
}

// Maximal bicliques of the subgraph described by adj, reported in host indices.
// Enumeration runs over whichever class is smaller.
inline std::vector<Biclique> maximal_bicliques(const SubAdjacency& adj, std::uint64_t guard) {
  std::vector<Biclique> out;
  const std::size_t na = adj.a_ids.size(), nb = adj.b_ids.size();
  if (na <= nb) {
    next_closure_concepts(adj, guard, [&](const Bits& a_set, const Bits& b_set) {
      out.emplace_back(bits_to_ids(a_set, adj.a_ids), bits_to_ids(b_set, adj.b_ids));
    });
  } else {
    // transpose
    SubAdjacency t;
    t.a_ids = adj.b_ids;
    t.b_ids = adj.a_ids;
    t.a_nbr.assign(nb, Bits(na));
    for (std::size_t i = 0; i < na; ++i) {
      for (auto j = adj.a_nbr[i].find_first(); j != Bits::npos; j = adj.a_nbr[i].find_next(j)) {
        t.a_nbr[j].set(i);
      }
    }
    next_closure_concepts(t, guard, [&](const Bits& b_set, const Bits& a_set) {
      out.emplace_back(bits_to_ids(a_set, t.b_ids), bits_to_ids(b_set, t.a_ids));
    });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// All bicliques when maximal_only is false (every nonempty (A',B') with
// A'xB' inside the edge set, canonically deduplicated), otherwise exactly the
// inclusion-maximal ones. The guard bounds candidate subsets.
inline std::vector<Biclique> enumerate_bicliques(const BipartiteGraph& g, bool maximal_only,
                                                 std::uint64_t guard = kDefaultEnumGuard) {
  auto adj = detail::SubAdjacency::full(g);
  if (maximal_only) return detail::maximal_bicliques(adj, guard);

  const bool a_small = g.a_size() <= g.b_size();
  const std::size_t n = a_small ? g.a_size() : g.b_size();
  if (n >= 63 || (std::uint64_t(1) << n) > guard) {
    throw resource_limit_error("biclique enumeration needs 2^" + std::to_string(n) +
                               " candidate subsets, above the guard (" + std::to_string(guard) +
                               ")");
  }
  std::uint64_t emitted = 0;
  std::vector<Biclique> out;
  std::vector<int> side, other;
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    detail::Bits s(n);
    side.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        s.set(i);
        side.push_back(static_cast<int>(i));
      }
    }
    detail::Bits common = a_small ? detail::common_b(adj, s) : [&] {
      detail::Bits bs(g.b_size());
      for (int j : side) bs.set(j);
      return detail::common_a(adj, bs);
    }();
    std::vector<int> pool = detail::bits_to_ids(common, a_small ? adj.b_ids : adj.a_ids);
    if (pool.empty()) continue;
    const std::size_t m = pool.size();
    for (std::uint64_t sub = 1; sub < (std::uint64_t(1) << m); ++sub) {
      if (++emitted > guard) {
        throw resource_limit_error("biclique enumeration emitted more than the guard (" +
                                   std::to_string(guard) + ") bicliques");
      }
      other.clear();
      for (std::size_t j = 0; j < m; ++j) {
        if (sub >> j & 1) other.push_back(pool[j]);
      }
      out.emplace_back(a_small ? Biclique(side, other) : Biclique(other, side));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// kappa(G) = max H(|A'|,|B'|) over bicliques of G; by monotonicity the maximum
// is attained on a maximal biclique.
inline rational kappa(const BipartiteGraph& g, std::uint64_t guard = kDefaultEnumGuard) {
  if (g.edge_count() == 0) {
    throw domain_error("kappa is undefined on a graph with no edges");
  }
  rational best = 0;
  for (const auto& bc : detail::maximal_bicliques(detail::SubAdjacency::full(g), guard)) {
    best = std::max(best, h_ratio(static_cast<long long>(bc.a.size()),
                                  static_cast<long long>(bc.b.size())));
  }
  return best;
}

// Largest k such that K_{k,k} is a biclique of g; 0 iff g has no edges.
// Any K_{k,k} extends to a maximal biclique with both sides >= k, so the
// maximum of min(|A'|,|B'|) over maximal bicliques is exact.
inline int max_balanced_k(const BipartiteGraph& g, std::uint64_t guard = kDefaultEnumGuard) {
  if (g.edge_count() == 0) return 0;
  int best = 0;
  for (const auto& bc : detail::maximal_bicliques(detail::SubAdjacency::full(g), guard)) {
    best = std::max(best, static_cast<int>(std::min(bc.a.size(), bc.b.size())));
  }
  return best;
}

// (|E|/kappa, |E|/kappa^2): valid lower bounds for the weight of any cover and
// the size of any realizing network, respectively.
struct CovLowerBound {
  rational cov_lower;
  rational rect_lower;
};

inline CovLowerBound cov_lower_bound(const BipartiteGraph& g,
                                     std::uint64_t guard = kDefaultEnumGuard) {
  if (g.edge_count() == 0) {
    throw domain_error("lower bounds need at least one edge");
  }
  const rational k = kappa(g, guard);
  const rational e = g.edge_count();
  return CovLowerBound{e / k, e / (k * k)};
}

// max over induced subgraphs G' with E(G') nonempty of |E(G')|/kappa(G').
inline rational induced_ratio_max(const BipartiteGraph& g,
                                  std::uint64_t guard = kDefaultEnumGuard) {
  const int total = g.a_size() + g.b_size();
  if (g.edge_count() == 0) {
    throw domain_error("induced ratio needs at least one edge");
  }
  if (total >= 63 || (std::uint64_t(1) << total) > guard) {
    throw resource_limit_error("induced subgraph enumeration needs 2^" + std::to_string(total) +
                               " subsets, above the guard (" + std::to_string(guard) + ")");
  }
  rational best = 0;
  const int na = g.a_size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << total); ++mask) {
    detail::Bits a_keep(na), b_keep(g.b_size());
    for (int i = 0; i < na; ++i) {
      if (mask >> i & 1) a_keep.set(i);
    }
    for (int j = 0; j < g.b_size(); ++j) {
      if (mask >> (na + j) & 1) b_keep.set(j);
    }
    auto sub = detail::SubAdjacency::induced(g, a_keep, b_keep);
    const long long e = sub.edge_total();
    if (e == 0) continue;
    rational sub_kappa = 0;
    for (const auto& bc : detail::maximal_bicliques(sub, guard)) {
      sub_kappa = std::max(sub_kappa, h_ratio(static_cast<long long>(bc.a.size()),
                                              static_cast<long long>(bc.b.size())));
    }
    best = std::max(best, rational(e) / sub_kappa);
  }
  return best;
}

}  // namespace bicov
