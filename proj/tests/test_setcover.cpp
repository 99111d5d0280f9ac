#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bicov/families.hpp"
#include "bicov/setcover.hpp"
#include "test_support.hpp"

using namespace bicov;
using namespace testsupport;

namespace {

// universe {1,2}; S1={1} cost 1, S2={2} cost 1, S3={1,2} cost 3/2
SetCoverInstance two_element_instance() {
  return SetCoverInstance({"1", "2"}, {{{0}, rational(1)},
                                       {{1}, rational(1)},
                                       {{0, 1}, rational(3, 2)}});
}

SetCoverInstance random_instance(std::uint64_t seed, int max_universe = 10, int max_sets = 12) {
  std::mt19937_64 gen(seed);
  const int n = 1 + static_cast<int>(gen() % max_universe);
  const int t = 1 + static_cast<int>(gen() % max_sets);
  std::vector<std::string> universe(n);
  for (int e = 0; e < n; ++e) universe[e] = "e" + std::to_string(e + 1);
  std::vector<WeightedSet> sets(t);
  std::vector<bool> covered(n, false);
  for (int j = 0; j < t; ++j) {
    for (int e = 0; e < n; ++e) {
      if (gen() % 3 == 0) {
        sets[j].members.push_back(e);
        covered[e] = true;
      }
    }
    if (sets[j].members.empty()) {
      int e = static_cast<int>(gen() % n);
      sets[j].members.push_back(e);
      covered[e] = true;
    }
    sets[j].cost = rational(1 + static_cast<long long>(gen() % 20),
                            1 + static_cast<long long>(gen() % 10));
  }
  for (int e = 0; e < n; ++e) {  // fold any uncovered element into the last set
    if (!covered[e]) sets[t - 1].members.push_back(e);
  }
  return SetCoverInstance(std::move(universe), std::move(sets));
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(SetCoverInstance({"1", "2"}, {{{0}, rational(1)}}), domain_error);
  CHECK_THROWS_AS(SetCoverInstance({"1"}, {{{0}, rational(0)}}), domain_error);
  CHECK_THROWS_AS(SetCoverInstance({"1", "1"}, {{{0, 1}, rational(1)}}), domain_error);
}

TEST_CASE("greedy on the two-element instance picks the bundle") {
  auto inst = two_element_instance();
  auto sol = greedy(inst);  // ratios 1, 1, 3/4
  REQUIRE(sol.chosen == std::vector<int>{2});
  CHECK(sol.total_cost == rational(3, 2));
}

TEST_CASE("greedy trivia and tie-break") {
  SetCoverInstance one({"1"}, {{{0}, rational(5)}});
  CHECK(greedy(one).total_cost == rational(5));

  // equal ratios: lowest index wins
  SetCoverInstance tie({"1"}, {{{0}, rational(2)}, {{0}, rational(2)}});
  CHECK(greedy(tie).chosen == std::vector<int>{0});
}

TEST_CASE("exact_opt") {
  CHECK(exact_opt(two_element_instance()).total_cost == rational(3, 2));

  SetCoverInstance dup({"1"}, {{{0}, rational(2)}, {{0}, rational(1)}});
  auto sol = exact_opt(dup);
  CHECK(sol.total_cost == rational(1));
  CHECK(sol.chosen == std::vector<int>{1});

  SECTION("guards") {
    ExactOptGuards tiny;
    tiny.max_universe = 1;
    CHECK_THROWS_AS(exact_opt(two_element_instance(), tiny), resource_limit_error);
  }

  SECTION("matches full selection enumeration on random instances") {
    for (std::uint64_t seed = 860; seed < 900; ++seed) {
      auto inst = random_instance(seed, 8, 9);
      REQUIRE(exact_opt(inst).total_cost == oracle_opt_enumeration(inst));
    }
  }
}

TEST_CASE("lp_relax") {
  CHECK(lp_relax(two_element_instance()) == rational(3, 2));

  SetCoverInstance one({"1"}, {{{0}, rational(7, 3)}});
  CHECK(lp_relax(one) == rational(7, 3));

  // fractional optimum x = (1/2,1/2,1/2); dual certificate y_a = 1/2
  SetCoverInstance tri({"1", "2", "3"}, {{{0, 1}, rational(1)},
                                         {{1, 2}, rational(1)},
                                         {{0, 2}, rational(1)}});
  CHECK(lp_relax(tri) == rational(3, 2));
  CHECK(oracle_lp_bruteforce(tri) == rational(3, 2));

  SECTION("matches the basic-solution oracle on random instances") {
    for (std::uint64_t seed = 700; seed < 730; ++seed) {
      auto inst = random_instance(seed, 5, 5);
      REQUIRE(lp_relax(inst) == oracle_lp_bruteforce(inst));
    }
    for (std::uint64_t seed = 730; seed < 745; ++seed) {
      auto inst = random_instance(seed, 6, 6);
      REQUIRE(lp_relax(inst) == oracle_lp_bruteforce(inst));
    }
    // duplicate and nested sets exercise degenerate pivots
    SetCoverInstance degen({"1", "2", "3"}, {{{0, 1, 2}, rational(2)},
                                             {{0, 1, 2}, rational(2)},
                                             {{0, 1}, rational(2)},
                                             {{0}, rational(1)}});
    REQUIRE(lp_relax(degen) == oracle_lp_bruteforce(degen));
  }
}

TEST_CASE("eta") {
  auto inst = two_element_instance();
  CHECK(eta(inst, {0, 1}) == rational(3, 4));
  CHECK(eta(inst, {0}) == rational(1));
  CHECK(eta(inst, {1}) == rational(1));
  SetCoverInstance one({"1"}, {{{0}, rational(9, 2)}});
  CHECK(eta(one, {0}) == rational(9, 2));
  CHECK_THROWS_AS(eta(inst, {}), domain_error);
}

TEST_CASE("eta_star") {
  CHECK(eta_star(two_element_instance()) == rational(3, 2));  // B={1,2}: 2 * 3/4
  SetCoverInstance one({"1"}, {{{0}, rational(4)}});
  CHECK(eta_star(one) == rational(4));

  SECTION("matches the unpruned enumeration oracle") {
    for (std::uint64_t seed = 750; seed < 780; ++seed) {
      auto inst = random_instance(seed, 9, 10);
      REQUIRE(eta_star(inst) == oracle_eta_star(inst));
    }
  }

  SECTION("uniform-cost matching biclique instance: eta* equals Z*_LP") {
    auto bi = biclique_instance(matching_graph(3));
    CHECK(eta_star(bi.instance) == rational(6));
    CHECK(lp_relax(bi.instance) == rational(6));
  }
  SECTION("guard and estimate mode") {
    SetCoverInstance inst({"1", "2", "3", "4", "5"},
                          {{{0, 1, 2}, rational(2)},
                           {{2, 3}, rational(5, 3)},
                           {{3, 4}, rational(1)},
                           {{0, 4}, rational(7, 2)}});
    CHECK_THROWS_AS(eta_star(inst, 2), resource_limit_error);
    auto est = eta_star_estimate(inst, 512, 42);
    CHECK_FALSE(est.exact);
    CHECK(est.value <= eta_star(inst));  // sampling only ever under-shoots
    CHECK(est.value == eta_star_estimate(inst, 512, 42).value);  // deterministic
  }
}

TEST_CASE("verify_chain on fixed instances") {
  SECTION("two-element instance: all four quantities equal 3/2, H_2 = 3/2") {
    auto rep = verify_chain(two_element_instance());
    CHECK(rep.eta_star_value == rational(3, 2));
    CHECK(rep.lp_value == rational(3, 2));
    CHECK(rep.opt_cost == rational(3, 2));
    CHECK(rep.greedy_cost == rational(3, 2));
    CHECK(rep.h_n == rational(3, 2));
  }
  SECTION("single-set instance: everything is the cost") {
    SetCoverInstance one({"1"}, {{{0}, rational(11, 4)}});
    auto rep = verify_chain(one);
    CHECK(rep.eta_star_value == rational(11, 4));
    CHECK(rep.greedy_cost == rational(11, 4));
    CHECK(rep.h_n == rational(1));
  }
}

TEST_CASE("chain holds on random instances") {
  for (std::uint64_t seed = 800; seed < 850; ++seed) {
    REQUIRE_NOTHROW(verify_chain(random_instance(seed)));
  }
}

TEST_CASE("biclique instances") {
  SECTION("K_{2,2}: Cov = 4") {
    BipartiteGraph k22({"a1", "a2"}, {"b1", "b2"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto bi = biclique_instance(k22);
    CHECK(exact_opt(bi.instance).total_cost == rational(4));
    CHECK(oracle_cov_dp(k22) == 4);
  }
  SECTION("matching 3+3: Cov = 2|E| = 6") {
    auto bi = biclique_instance(matching_graph(3));
    CHECK(exact_opt(bi.instance).total_cost == rational(6));
  }
  SECTION("Figure 1: exact Cov is 13, the pictured cover is optimal") {
    auto g = fig1_graph();
    auto bi = biclique_instance(g);
    CHECK(bi.instance.sets.size() == 93);
    ExactOptGuards guards;
    auto opt = exact_opt(bi.instance, guards);
    CHECK(opt.total_cost == rational(13));
    CHECK(oracle_cov_dp(g) == 13);
    auto cover = solution_cover(bi, opt);
    CHECK(validate_cover(g, cover) == 13);
  }
  SECTION("solver agrees with the DP oracle on random graphs") {
    for (std::uint64_t seed = 900; seed < 915; ++seed) {
      auto g = random_graph_with_edges(4, seed);
      auto bi = biclique_instance(g);
      REQUIRE(exact_opt(bi.instance).total_cost == rational(oracle_cov_dp(g)));
    }
  }
  SECTION("chain holds on biclique instances and OPT respects the kappa bound") {
    for (std::uint64_t seed = 950; seed < 965; ++seed) {
      auto g = random_graph_with_edges(4, seed);
      auto bi = biclique_instance(g);
      auto rep = verify_chain(bi.instance);
      REQUIRE(rep.opt_cost >= cov_lower_bound(g).cov_lower);
    }
  }
}

TEST_CASE("maximal-only restriction can strictly increase the optimum") {
  // path a1-b1, a1-b2, a2-b2: the optimum uses the small K_{1,1} on (a2,b2)
  BipartiteGraph p4({"a1", "a2"}, {"b1", "b2"}, {{0, 0}, {0, 1}, {1, 1}});
  auto full = biclique_instance(p4);
  CHECK(exact_opt(full.instance).total_cost == rational(5));

  auto maximal = enumerate_bicliques(p4, true);
  std::vector<WeightedSet> sets;
  for (const auto& bc : maximal) {
    WeightedSet s;
    s.cost = bc.weight();
    for (int a : bc.a) {
      for (int b : bc.b) {
        auto it = std::lower_bound(p4.edges().begin(), p4.edges().end(), std::make_pair(a, b));
        s.members.push_back(static_cast<int>(it - p4.edges().begin()));
      }
    }
    sets.push_back(std::move(s));
  }
  SetCoverInstance maximal_inst(full.instance.universe, std::move(sets));
  CHECK(exact_opt(maximal_inst).total_cost == rational(6));
}

TEST_CASE("greedy meets the Figure 1 bound against eta*") {
  auto bi = biclique_instance(fig1_graph());
  auto sol = greedy(bi.instance);
  auto es = eta_star(bi.instance);
  CHECK(sol.total_cost <= harmonic(15) * es);
  CHECK(sol.total_cost <= rational(13) * harmonic(15));
}
