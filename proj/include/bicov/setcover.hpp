#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bicov/biclique_enum.hpp"
#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"
#include "bicov/rational.hpp"
#include "bicov/simplex.hpp"

namespace bicov {

struct WeightedSet {
  std::vector<int> members;  // sorted unique element indices
  rational cost;             // > 0
};

// Weighted set cover instance: universe of labelled elements plus cost-weighted
// subsets whose union is the whole universe. Costs are exact rationals.
struct SetCoverInstance {
  std::vector<std::string> universe;
  std::vector<WeightedSet> sets;

  SetCoverInstance() = default;
  SetCoverInstance(std::vector<std::string> universe_labels, std::vector<WeightedSet> weighted_sets)
      : universe(std::move(universe_labels)), sets(std::move(weighted_sets)) {
    std::set<std::string> seen;
    for (const auto& l : universe) {
      if (!seen.insert(l).second) throw domain_error("duplicate universe element: " + l);
    }
    const int n = static_cast<int>(universe.size());
    std::vector<bool> covered(n, false);
    for (auto& s : sets) {
      if (s.cost <= 0) throw domain_error("set costs must be positive");
      std::sort(s.members.begin(), s.members.end());
      s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
      for (int e : s.members) {
        if (e < 0 || e >= n) throw domain_error("set member out of range");
        covered[e] = true;
      }
    }
    for (int e = 0; e < n; ++e) {
      if (!covered[e]) {
        throw domain_error("sets do not cover the universe; element '" + universe[e] +
                           "' is in no set");
      }
    }
  }
};

struct CoverSolution {
  std::vector<int> chosen;
  rational total_cost;
};

// The greedy loop exactly as displayed: repeatedly take the set minimizing
// c(S)/|S cap U|; ties break to the lowest set index, so runs are reproducible.
inline CoverSolution greedy(const SetCoverInstance& inst) {
  const int n = static_cast<int>(inst.universe.size());
  std::vector<bool> uncovered(n, true);
  int remaining = n;
  CoverSolution sol;
  sol.total_cost = 0;
  while (remaining > 0) {
    int best = -1;
    rational best_ratio = 0;
    for (std::size_t j = 0; j < inst.sets.size(); ++j) {
      int gain = 0;
      for (int e : inst.sets[j].members) gain += uncovered[e];
      if (gain == 0) continue;
      rational ratio = inst.sets[j].cost / gain;
      if (best < 0 || ratio < best_ratio) {
        best = static_cast<int>(j);
        best_ratio = ratio;
      }
    }
    if (best < 0) throw domain_error("greedy: uncoverable residual universe");
    sol.chosen.push_back(best);
    sol.total_cost += inst.sets[best].cost;
    for (int e : inst.sets[best].members) {
      if (uncovered[e]) {
        uncovered[e] = false;
        --remaining;
      }
    }
  }
  return sol;
}

// eta(B) = min over sets of c(S)/|S cap B|, the quantity inside the greedy loop.
inline rational eta(const SetCoverInstance& inst, const std::vector<int>& b_elems) {
  if (b_elems.empty()) throw domain_error("eta needs a nonempty element subset");
  const int n = static_cast<int>(inst.universe.size());
  std::vector<bool> in_b(n, false);
  for (int e : b_elems) {
    if (e < 0 || e >= n) throw domain_error("eta: element out of range");
    in_b[e] = true;
  }
  bool have = false;
  rational best = 0;
  for (const auto& s : inst.sets) {
    int cnt = 0;
    for (int e : s.members) cnt += in_b[e];
    if (cnt == 0) continue;
    rational ratio = s.cost / cnt;
    if (!have || ratio < best) {
      best = ratio;
      have = true;
    }
  }
  if (!have) throw domain_error("eta: no set intersects the subset");
  return best;
}

namespace detail {

inline rational eta_mask(const std::vector<std::uint64_t>& set_masks,
                         const std::vector<rational>& costs, std::uint64_t b_mask,
                         const rational* abort_below = nullptr, long long b_size = 0) {
  rational best = 0;
  bool have = false;
  for (std::size_t j = 0; j < set_masks.size(); ++j) {
    const int cnt = std::popcount(set_masks[j] & b_mask);
    if (cnt == 0) continue;
    rational ratio = costs[j] / cnt;
    if (!have || ratio < best) {
      best = ratio;
      have = true;
      // |B| * eta(B) can only shrink as the scan lowers the minimum
      if (abort_below && best * b_size <= *abort_below) return best;
    }
  }
  return best;
}

inline std::pair<std::vector<std::uint64_t>, std::vector<rational>> to_masks(
    const SetCoverInstance& inst) {
  std::vector<std::uint64_t> masks(inst.sets.size(), 0);
  std::vector<rational> costs(inst.sets.size());
  for (std::size_t j = 0; j < inst.sets.size(); ++j) {
    for (int e : inst.sets[j].members) masks[j] |= std::uint64_t(1) << e;
    costs[j] = inst.sets[j].cost;
  }
  return {std::move(masks), std::move(costs)};
}

}  // namespace detail

// eta* = max over nonempty B of |B| * eta(B), by exhaustive enumeration.
inline rational eta_star(const SetCoverInstance& inst, int max_universe = 20) {
  const int n = static_cast<int>(inst.universe.size());
  if (n == 0) throw domain_error("eta* needs a nonempty universe");
  if (n > max_universe || n > 62) {
    throw resource_limit_error("eta* enumerates 2^" + std::to_string(n) +
                               " subsets, above the guard (universe limit " +
                               std::to_string(max_universe) + ")");
  }
  auto [masks, costs] = detail::to_masks(inst);
  const std::uint64_t full = (n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
  rational best = detail::eta_mask(masks, costs, full) * n;  // seed with B = A
  // subsets by increasing size; the scan aborts once |B|*eta(B) cannot win
  for (int size = 1; size < n; ++size) {
    std::uint64_t b = (std::uint64_t(1) << size) - 1;
    while (b < full) {
      rational val = detail::eta_mask(masks, costs, b, &best, size) * size;
      if (val > best) best = val;
      // Gosper's hack: next mask with the same popcount
      std::uint64_t c = b & -b, r = b + c;
      b = (((r ^ b) >> 2) / c) | r;
    }
  }
  return best;
}

struct EtaStarEstimate {
  rational value;  // a lower estimate: max over the sampled subsets
  bool exact;
};

// Subsampled variant for universes beyond the guard; flagged non-exact.
inline EtaStarEstimate eta_star_estimate(const SetCoverInstance& inst, int samples,
                                         std::uint64_t seed) {
  const int n = static_cast<int>(inst.universe.size());
  if (n == 0) throw domain_error("eta* needs a nonempty universe");
  if (n > 64) throw resource_limit_error("eta* estimate supports at most 64 elements");
  auto [masks, costs] = detail::to_masks(inst);
  const std::uint64_t full = (n == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n) - 1);
  rational best = detail::eta_mask(masks, costs, full) * n;
  std::mt19937_64 gen(seed);
  for (int s = 0; s < samples; ++s) {
    std::uint64_t b = gen() & full;
    if (b == 0) continue;
    rational val = detail::eta_mask(masks, costs, b) * std::popcount(b);
    if (val > best) best = val;
  }
  return {best, false};
}

struct ExactOptGuards {
  int max_universe = 24;
  std::size_t max_sets = std::size_t(1) << 20;
  std::uint64_t max_steps = std::uint64_t(1) << 26;
};

// Exact optimum by branch and bound over set inclusion. Branches on the
// uncovered element contained in the fewest sets; prunes with the bound
// |U| * eta(U) <= cost of any completion (the eta* argument restricted to U)
// and a best-cost-per-residual memo. Deterministic.
inline CoverSolution exact_opt(const SetCoverInstance& inst, const ExactOptGuards& guards = {}) {
  const int n = static_cast<int>(inst.universe.size());
  if (n > guards.max_universe || n > 62) {
    throw resource_limit_error("exact_opt guard: universe size " + std::to_string(n) +
                               " exceeds " + std::to_string(std::min(guards.max_universe, 62)));
  }
  if (inst.sets.size() > guards.max_sets) {
    throw resource_limit_error("exact_opt guard: set count exceeds " +
                               std::to_string(guards.max_sets));
  }
  if (n == 0) return CoverSolution{{}, 0};
  auto [masks, costs] = detail::to_masks(inst);
  const std::uint64_t full = (std::uint64_t(1) << n) - 1;
  std::vector<std::vector<int>> sets_of(n);
  for (std::size_t j = 0; j < masks.size(); ++j) {
    for (int e = 0; e < n; ++e) {
      if (masks[j] >> e & 1) sets_of[e].push_back(static_cast<int>(j));
    }
  }
  CoverSolution best;
  {
    auto g = greedy(inst);
    best.total_cost = g.total_cost;
    best.chosen = g.chosen;
    std::sort(best.chosen.begin(), best.chosen.end());
  }
  std::map<std::uint64_t, rational> seen;
  std::vector<int> current;
  std::uint64_t steps = 0;

  auto lower = [&](std::uint64_t uncov) -> rational {
    if (uncov == 0) return 0;
    return detail::eta_mask(masks, costs, uncov) * std::popcount(uncov);
  };

  auto dfs = [&](auto&& self, std::uint64_t uncov, rational cost) -> void {
    if (++steps > guards.max_steps) {
      throw resource_limit_error("exact_opt exceeded the step guard (" +
                                 std::to_string(guards.max_steps) + ")");
    }
    if (uncov == 0) {
      if (cost < best.total_cost) {
        best.total_cost = cost;
        best.chosen = current;
        std::sort(best.chosen.begin(), best.chosen.end());
      }
      return;
    }
    auto it = seen.find(uncov);
    if (it != seen.end() && it->second <= cost) return;
    seen[uncov] = cost;
    int branch = -1;
    std::size_t fewest = 0;
    for (int e = 0; e < n; ++e) {
      if (!(uncov >> e & 1)) continue;
      if (branch < 0 || sets_of[e].size() < fewest) {
        branch = e;
        fewest = sets_of[e].size();
      }
    }
    for (int j : sets_of[branch]) {
      rational next_cost = cost + costs[j];
      if (next_cost + lower(uncov & ~masks[j]) >= best.total_cost) continue;
      current.push_back(j);
      self(self, uncov & ~masks[j], next_cost);
      current.pop_back();
    }
  };
  dfs(dfs, full, rational(0));
  return best;
}

// Optimal value of the standard LP relaxation (minimize sum c_i x_i subject to
// sum_{i: a in S_i} x_i >= 1, x >= 0), exact.
inline rational lp_relax(const SetCoverInstance& inst, const ExactOptGuards& guards = {}) {
  const int n = static_cast<int>(inst.universe.size());
  if (n > guards.max_universe) {
    throw resource_limit_error("lp_relax guard: universe size " + std::to_string(n) +
                               " exceeds " + std::to_string(guards.max_universe));
  }
  if (inst.sets.size() > guards.max_sets) {
    throw resource_limit_error("lp_relax guard: set count exceeds " +
                               std::to_string(guards.max_sets));
  }
  if (n == 0) return 0;
  const std::size_t t = inst.sets.size();
  // columns: x_1..x_t, then one surplus per element
  std::vector<std::vector<rational>> m(n, std::vector<rational>(t + n, rational(0)));
  std::vector<rational> b(n, rational(1)), c(t + n, rational(0));
  for (std::size_t j = 0; j < t; ++j) {
    for (int e : inst.sets[j].members) m[e][j] = 1;
    c[j] = inst.sets[j].cost;
  }
  for (int e = 0; e < n; ++e) m[e][t + e] = -1;
  return detail::ExactSimplex(std::move(m), std::move(b), std::move(c)).solve();
}

struct ChainReport {
  rational eta_star_value;
  rational lp_value;
  rational opt_cost;
  rational greedy_cost;
  rational h_n;  // harmonic number of |universe|
};

// Computes eta*, Z*_LP, OPT and Greedy with exact arithmetic and asserts
// eta* <= Z*_LP <= OPT <= Greedy <= H_n * eta*. A violation falsifies a
// proven chain and is raised as theorem_violation; it must never fire.
inline ChainReport verify_chain(const SetCoverInstance& inst, const ExactOptGuards& guards = {},
                                int eta_star_max_universe = 20) {
  ChainReport r{eta_star(inst, eta_star_max_universe), lp_relax(inst, guards),
                exact_opt(inst, guards).total_cost, greedy(inst).total_cost,
                harmonic(static_cast<long long>(inst.universe.size()))};
  if (!(r.eta_star_value <= r.lp_value)) {
    throw theorem_violation("chain violated: eta* > Z*_LP");
  }
  if (!(r.lp_value <= r.opt_cost)) {
    throw theorem_violation("chain violated: Z*_LP > OPT");
  }
  if (!(r.opt_cost <= r.greedy_cost)) {
    throw theorem_violation("chain violated: OPT > Greedy");
  }
  if (!(r.greedy_cost <= r.h_n * r.eta_star_value)) {
    throw theorem_violation("chain violated: Greedy > H_n * eta*");
  }
  return r;
}

// The biclique covering problem as weighted set cover: universe = E(G), one
// set per biclique at cost |A'|+|B'|. All bicliques are enumerated, not only
// maximal ones: a minimum-weight cover may need small bicliques (a matching is
// covered by K_{1,1}s at weight 2 each; any maximal superset weighs more).
struct BicliqueInstance {
  SetCoverInstance instance;
  std::vector<Biclique> bicliques;  // parallel to instance.sets
};

inline BicliqueInstance biclique_instance(const BipartiteGraph& g,
                                          std::uint64_t enum_guard = kDefaultEnumGuard) {
  BicliqueInstance out;
  std::vector<std::string> universe;
  universe.reserve(g.edges().size());
  for (auto [a, b] : g.edges()) {
    universe.push_back(g.a_labels()[a] + "--" + g.b_labels()[b]);
  }
  out.bicliques = enumerate_bicliques(g, false, enum_guard);
  std::vector<WeightedSet> sets;
  sets.reserve(out.bicliques.size());
  for (const auto& bc : out.bicliques) {
    WeightedSet s;
    s.cost = bc.weight();
    for (int a : bc.a) {
      for (int b : bc.b) {
        auto it = std::lower_bound(g.edges().begin(), g.edges().end(), std::make_pair(a, b));
        s.members.push_back(static_cast<int>(it - g.edges().begin()));
      }
    }
    sets.push_back(std::move(s));
  }
  out.instance = SetCoverInstance(std::move(universe), std::move(sets));
  return out;
}

// Decodes a set-cover solution over a biclique instance back into a cover.
inline BicliqueCover solution_cover(const BicliqueInstance& bi, const CoverSolution& sol) {
  BicliqueCover cover;
  for (int j : sol.chosen) cover.bicliques.push_back(bi.bicliques.at(j));
  cover.canonicalize();
  return cover;
}

}  // namespace bicov
