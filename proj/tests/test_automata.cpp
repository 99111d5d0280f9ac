#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "bicov/automata.hpp"
#include "bicov/families.hpp"
#include "bicov/setcover.hpp"
#include "test_support.hpp"

using namespace bicov;
using namespace testsupport;

TEST_CASE("language/graph bijection") {
  SECTION("single word round-trips") {
    TwoLetterLanguage l({"a"}, {"b"}, {{0, 0}});
    auto g = graph_of(l);
    CHECK(g.edge_count() == 1);
    auto l2 = language_of(g);
    CHECK(l2.words == l.words);
    CHECK(l2.first_alphabet == l.first_alphabet);
  }
  SECTION("Figure 1 graph is a 15-word language") {
    auto l = language_of(fig1_graph());
    CHECK(l.words.size() == 15);
    CHECK(graph_of(l) == fig1_graph());
  }
  SECTION("occurrence condition is enforced") {
    CHECK_THROWS_AS(TwoLetterLanguage({"a1", "a2"}, {"b"}, {{0, 0}}), domain_error);
  }
  SECTION("overlapping alphabets are rejected") {
    CHECK_THROWS_AS(TwoLetterLanguage({"s"}, {"s"}, {{0, 0}}), domain_error);
  }
}

TEST_CASE("nfa_from_network") {
  SECTION("matching 2+2 with two direct edges: size 6") {
    auto g = matching_graph(2);
    auto l = language_of(g);
    auto m = nfa_from_network(direct_network(g), l);
    CHECK(m.size() == 6);
    CHECK(language_enumerate(m) == words_of(l));
  }
  SECTION("Figure 1 twelve-edge network: size 12 + 5 + 5 = 22") {
    auto g = fig1_graph();
    auto l = language_of(g);
    auto m = nfa_from_network(fig1_network12(), l);
    CHECK(m.size() == 22);
    CHECK(language_enumerate(m) == words_of(l));
  }
  SECTION("network that does not realize the language is rejected") {
    auto l = language_of(matching_graph(2));
    std::vector<std::string> labels{"a1", "a2", "b1", "b2"};
    RectifierNetwork wrong(labels, {{0, 2}, {1, 3}, {0, 3}}, {0, 1}, {2, 3});
    CHECK_THROWS_AS(nfa_from_network(wrong, l), domain_error);
  }
}

TEST_CASE("nfa_from_cover") {
  auto g = fig1_graph();
  auto l = language_of(g);
  SECTION("Figure 1 cover gives an epsilon-free NFA with 13 transitions") {
    auto m = nfa_from_cover(fig1_cover(), l);
    CHECK(m.size() == 13);
    CHECK(m.is_epsilon_free());
    CHECK(language_enumerate(m) == words_of(l));
  }
  SECTION("matching 3+3: six transitions") {
    auto m3 = matching_graph(3);
    auto lm = language_of(m3);
    BicliqueCover ones;
    for (int i = 0; i < 3; ++i) {
      ones.bicliques.emplace_back(std::vector<int>{i}, std::vector<int>{i});
    }
    CHECK(nfa_from_cover(ones, lm).size() == 6);
  }
  SECTION("single K_{2,2}: 4 transitions, 4 words") {
    BipartiteGraph k22({"a1", "a2"}, {"b1", "b2"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto lk = language_of(k22);
    BicliqueCover whole;
    whole.bicliques.emplace_back(std::vector<int>{0, 1}, std::vector<int>{0, 1});
    auto m = nfa_from_cover(whole, lk);
    CHECK(m.size() == 4);
    CHECK(language_enumerate(m).size() == 4);
  }
  SECTION("invalid cover rejected") {
    BicliqueCover bad;
    bad.bicliques.emplace_back(std::vector<int>{0}, std::vector<int>{0});
    CHECK_THROWS_AS(nfa_from_cover(bad, l), validation_error);
  }
}

TEST_CASE("cover_from_nfa") {
  auto g = fig1_graph();
  auto l = language_of(g);
  SECTION("round trip recovers the Figure 1 cover up to order") {
    auto canonical = fig1_cover();
    canonical.canonicalize();
    auto m = nfa_from_cover(canonical, l);
    auto extracted = cover_from_nfa(m);
    auto got = extracted.cover;
    got.canonicalize();
    CHECK(got.bicliques == canonical.bicliques);
    CHECK(got.weight() == m.size());
    CHECK(extracted.graph == g);
  }
  SECTION("K_{2,2} NFA yields the single biclique at weight 4") {
    BipartiteGraph k22({"a1", "a2"}, {"b1", "b2"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    auto lk = language_of(k22);
    BicliqueCover whole;
    whole.bicliques.emplace_back(std::vector<int>{0, 1}, std::vector<int>{0, 1});
    auto extracted = cover_from_nfa(nfa_from_cover(whole, lk));
    REQUIRE(extracted.cover.bicliques.size() == 1);
    CHECK(extracted.cover.weight() == 4);
  }
  SECTION("structural preconditions are validated, not assumed") {
    // unreachable state: not trim
    Nfa not_trim({"q0", "p", "dead", "qf"}, {"a", "b"},
                 {{0, 0, 1}, {1, 1, 3}}, 0, {3});
    CHECK_THROWS_AS(cover_from_nfa(not_trim), domain_error);
    // two accepting states
    Nfa multi({"q0", "p", "f1", "f2"}, {"a", "b"},
              {{0, 0, 1}, {1, 1, 2}, {1, 1, 3}}, 0, {2, 3});
    CHECK_THROWS_AS(cover_from_nfa(multi), domain_error);
    // inconsistent layers: a length-1 and a length-2 path into the same state
    Nfa skewed({"q0", "p", "qf"}, {"a", "b"},
               {{0, 0, 1}, {1, 1, 2}, {0, 0, 2}}, 0, {2});
    CHECK_THROWS_AS(cover_from_nfa(skewed), domain_error);
    // epsilon transition present
    Nfa eps({"q0", "p", "qf"}, {"a", "b"},
            {{0, 0, 1}, {1, Nfa::kEpsilon, 2}}, 0, {2});
    CHECK_THROWS_AS(cover_from_nfa(eps), domain_error);
  }
}

TEST_CASE("eliminate_epsilon") {
  SECTION("closure example: a then epsilon then b") {
    Nfa m({"q0", "p", "r", "qf"}, {"a", "b"},
          {{0, 0, 1}, {1, Nfa::kEpsilon, 2}, {2, 1, 3}}, 0, {3});
    auto e = eliminate_epsilon(m);
    REQUIRE(e.is_epsilon_free());
    REQUIRE(e.transitions.size() == 2);
    CHECK(e.transitions[0] == Nfa::Transition{0, 0, 1});
    CHECK(e.transitions[1] == Nfa::Transition{1, 1, 3});
    CHECK(language_enumerate(e) == std::set<std::vector<std::string>>{{"a", "b"}});
  }
  SECTION("epsilon-free trim input is unchanged") {
    auto l = language_of(matching_graph(2));
    BicliqueCover ones;
    for (int i = 0; i < 2; ++i) {
      ones.bicliques.emplace_back(std::vector<int>{i}, std::vector<int>{i});
    }
    auto m = nfa_from_cover(ones, l);
    auto e = eliminate_epsilon(m);
    CHECK(e.transitions == m.transitions);
    CHECK(e.accepting == m.accepting);
  }
  SECTION("size bound |Q| times the non-epsilon transition count") {
    auto g = fig1_graph();
    auto l = language_of(g);
    auto m = nfa_from_network(fig1_network13(), l);
    auto e = eliminate_epsilon(m);
    long long non_eps = 0;
    for (const auto& t : m.transitions) non_eps += t.symbol != Nfa::kEpsilon;
    CHECK(e.size() <= static_cast<long long>(m.states.size()) * non_eps);
    CHECK(language_enumerate(e) == words_of(l));
  }
  SECTION("network NFA for the orthogonality graph: equivalent, at least Cov") {
    auto g = orthogonality_graph(2);
    auto l = language_of(g);
    auto net = perm_invariant_network(2, orthogonal_signature_set(2));
    auto m = nfa_from_network(net, l);
    auto e = eliminate_epsilon(m);
    CHECK(language_enumerate(e) == words_of(l));
    auto opt = exact_opt(biclique_instance(g).instance);
    CHECK(opt.total_cost == rational(12));
    CHECK(rational(e.size()) >= opt.total_cost);  // eps-free NFA size >= Cov
    CHECK(rational(e.size()) >= cov_lower_bound(g).cov_lower);
  }
}

TEST_CASE("language enumeration and equivalence") {
  SECTION("cyclic automata are rejected") {
    Nfa cyc({"q0", "p"}, {"a"}, {{0, 0, 1}, {1, 0, 0}}, 0, {1});
    CHECK_THROWS_AS(language_enumerate(cyc), domain_error);
  }
  SECTION("NFAs from different covers of the same graph are equivalent") {
    auto g = fig1_graph();
    auto l = language_of(g);
    std::mt19937_64 gen(3);
    auto c1 = random_valid_cover(g, gen);
    auto c2 = random_valid_cover(g, gen);
    CHECK(equivalent(nfa_from_cover(c1, l), nfa_from_cover(c2, l)));
  }
  SECTION("NFAs of the two Figure 1 networks are equivalent") {
    auto g = fig1_graph();
    auto l = language_of(g);
    CHECK(equivalent(nfa_from_network(fig1_network13(), l),
                     nfa_from_network(fig1_network12(), l)));
  }
}

TEST_CASE("cover bridge invariants on random languages") {
  for (std::uint64_t seed = 1000; seed < 1020; ++seed) {
    auto g = random_graph_with_edges(4, seed);
    auto l = language_of(g);
    std::mt19937_64 gen(seed);
    auto c = random_valid_cover(g, gen);
    auto m = nfa_from_cover(c, l);
    REQUIRE(m.size() == c.weight());
    REQUIRE(language_enumerate(m) == words_of(l));
    auto back = cover_from_nfa(m);
    auto canonical = c;
    canonical.canonicalize();
    auto got = back.cover;
    got.canonicalize();
    REQUIRE(got.bicliques == canonical.bicliques);
    REQUIRE(back.cover.weight() == m.size());
  }
}

TEST_CASE("smallest layered NFA equals the exact cover optimum") {
  for (std::uint64_t seed = 1100; seed < 1110; ++seed) {
    auto g = random_graph_with_edges(4, seed);
    auto l = language_of(g);
    auto bi = biclique_instance(g);
    auto opt = exact_opt(bi.instance);
    auto m = nfa_from_cover(solution_cover(bi, opt), l);
    REQUIRE(rational(m.size()) == opt.total_cost);
    REQUIRE(language_enumerate(m) == words_of(l));
  }
}
