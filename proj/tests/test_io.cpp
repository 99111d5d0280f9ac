#include <catch2/catch_amalgamated.hpp>

#include "bicov/bound_report.hpp"
#include "bicov/dot.hpp"
#include "bicov/families.hpp"
#include "bicov/json_io.hpp"
#include "bicov/rect_search.hpp"
#include "test_support.hpp"

using namespace bicov;
using namespace testsupport;

TEST_CASE("rational text form") {
  CHECK(rational_to_string(rational(3, 2)) == "3/2");
  CHECK(rational_to_string(rational(4)) == "4");
  CHECK(rational_to_string(rational(-6, 4)) == "-3/2");
  CHECK(rational_from_string("3/2") == rational(3, 2));
  CHECK(rational_from_string("7") == rational(7));
  CHECK(rational_from_string("-10/5") == rational(-2));
  CHECK_THROWS_AS(rational_from_string("x/2"), domain_error);
  CHECK_THROWS_AS(rational_from_string("1/0"), domain_error);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(1) == rational(1));
  CHECK(harmonic(2) == rational(3, 2));
  CHECK(harmonic(5) == rational(137, 60));
}

TEST_CASE("JSON round trips") {
  SECTION("graph") {
    auto g = fig1_graph();
    auto j = graph_to_json(g);
    CHECK(graph_from_json(j) == g);
    CHECK(j.dump() == graph_to_json(graph_from_json(j)).dump());
  }
  SECTION("network") {
    auto r = fig1_network12();
    auto j = network_to_json(r);
    auto r2 = network_from_json(j);
    CHECK(r2.labels() == r.labels());
    CHECK(r2.edges() == r.edges());
    CHECK(network_to_json(r2).dump() == j.dump());
  }
  SECTION("cover") {
    auto g = fig1_graph();
    auto c = fig1_cover();
    auto j = cover_to_json(g, c);
    auto c2 = cover_from_json(j, g);
    CHECK(validate_cover(g, c2) == 13);
  }
  SECTION("instance with fraction costs") {
    SetCoverInstance inst({"1", "2"}, {{{0}, rational(1)},
                                       {{1}, rational(1)},
                                       {{0, 1}, rational(3, 2)}});
    auto j = instance_to_json(inst);
    CHECK(j["sets"][2]["cost"] == "3/2");
    auto inst2 = instance_from_json(j);
    CHECK(inst2.sets.size() == 3);
    CHECK(inst2.sets[2].cost == rational(3, 2));
  }
  SECTION("NFA with epsilon as the empty string") {
    auto g = matching_graph(2);
    auto l = language_of(g);
    auto m = nfa_from_network(direct_network(g), l);
    auto j = nfa_to_json(m);
    bool saw_eps = false;
    for (const auto& t : j["transitions"]) saw_eps |= t[1].get<std::string>().empty();
    CHECK(saw_eps);
    auto m2 = nfa_from_json(j);
    CHECK(m2.size() == m.size());
    CHECK(equivalent(m, m2));
  }
  SECTION("malformed input carries a parse message") {
    CHECK_THROWS_AS(graph_from_json(json::parse(R"({"a": ["x"]})")), domain_error);
    CHECK_THROWS_AS(nfa_from_json(json::parse(R"({"states": []})")), domain_error);
  }
}

TEST_CASE("DOT output") {
  auto g = matching_graph(2);
  auto dot = graph_to_dot(g);
  CHECK(dot.find("rankdir=LR") != std::string::npos);
  CHECK(dot.find("\"a1\" -> \"b1\"") != std::string::npos);
  CHECK(dot == graph_to_dot(g));  // deterministic

  auto net_dot = network_to_dot(direct_network(g));
  CHECK(net_dot.find("rank=source") != std::string::npos);

  auto m = nfa_from_network(direct_network(g), language_of(g));
  auto nfa_dot = nfa_to_dot(m);
  CHECK(nfa_dot.find("label=\"eps\"") != std::string::npos);
  CHECK(nfa_dot.find("doublecircle") != std::string::npos);
}

TEST_CASE("beta arithmetic") {
  CHECK(beta_exponent(rational(2), rational(1), rational(1)) == rational(3, 2));
  CHECK(beta_within_bound(rational(2), rational(1), rational(1)));
  CHECK_THROWS_AS(beta_exponent(rational(1), rational(0), rational(1)), domain_error);

  // the bound is exactly delta <= 2r
  CHECK_FALSE(beta_within_bound(rational(5, 2), rational(1), rational(1, 2)));
  CHECK(beta_within_bound(rational(2), rational(1), rational(1, 3)));
}

TEST_CASE("bound report") {
  BipartiteGraph k22({"a1", "a2"}, {"b1", "b2"}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}});
  BicliqueCover whole;
  whole.bicliques.emplace_back(std::vector<int>{0, 1}, std::vector<int>{0, 1});
  auto net = cover_to_depth2(k22, whole);
  auto rep = make_bound_report(k22, net, whole);
  CHECK(rep.n == 4);
  CHECK(rep.edge_count == 4);
  CHECK(rep.kappa_value == rational(1));
  CHECK(rep.cov_lower == rational(4));
  CHECK(rep.cov_upper == 4);
  CHECK(rep.rect_upper == 4);
  CHECK_FALSE(rep.alpha.has_value());  // kappa = 1 admits no alpha in (0,1]

  auto j = bound_report_to_json(rep);
  CHECK(j["kappa"] == "1");
  CHECK(j["alpha"].is_null());

  SECTION("alpha defined on the Figure 1 graph with the pictured pair") {
    auto g = fig1_graph();
    auto rep2 = make_bound_report(g, fig1_network12(), fig1_cover());
    // |E|=15, cov_upper=13, kappa=3/2: 13 < 15 and 13*3/2 >= 15
    REQUIRE(rep2.alpha.has_value());
    CHECK(*rep2.alpha > 0);
    CHECK(*rep2.alpha <= 1);
    REQUIRE(rep2.beta_bound_ok.has_value());
    CHECK(*rep2.beta_bound_ok);
  }
  SECTION("a cover that does not validate is rejected") {
    BicliqueCover bad;
    bad.bicliques.emplace_back(std::vector<int>{0}, std::vector<int>{0});
    CHECK_THROWS_AS(make_bound_report(k22, net, bad), validation_error);
  }
}
