// bicov: biclique covers, rectifier networks and the set-cover machinery
// around them, on desk-scale bipartite graphs.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bicov/automata.hpp"
#include "bicov/biclique_enum.hpp"
#include "bicov/bipartite_graph.hpp"
#include "bicov/bound_report.hpp"
#include "bicov/dot.hpp"
#include "bicov/errors.hpp"
#include "bicov/families.hpp"
#include "bicov/json_io.hpp"
#include "bicov/rect_search.hpp"
#include "bicov/rectifier.hpp"
#include "bicov/setcover.hpp"

namespace {

using bicov::json;

struct Options {
  std::string format = "json";
  std::uint64_t seed = 1;
  std::uint64_t guard_subsets = bicov::kDefaultEnumGuard;
  int guard_edges = 24;
  bool force_exact = false;
  bool greedy_only = false;
  std::string out_file;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out_file.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out_file, std::ios::binary);
    if (!f) throw bicov::domain_error("cannot open output file " + opt.out_file);
    f << text;
  }
}

void emit_json(const Options& opt, const json& j) { emit(opt, j.dump(2) + "\n"); }

json load_json_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw bicov::domain_error("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw bicov::domain_error("parse error in " + path + ": " + e.what());
  }
}

// Graph inputs accept both a family spec and a JSON file path.
bicov::BipartiteGraph load_graph(const std::string& arg) {
  if (arg.rfind("orthogonal:", 0) == 0 || arg.rfind("circulant:", 0) == 0 ||
      arg.rfind("matching:", 0) == 0 || arg.rfind("random:", 0) == 0) {
    return bicov::parse_family(arg);
  }
  return bicov::graph_from_json(load_json_file(arg));
}

int cmd_gen(const Options& opt, const std::string& family) {
  auto g = bicov::parse_family(family);
  if (opt.format == "dot") {
    emit(opt, bicov::graph_to_dot(g));
  } else {
    emit_json(opt, bicov::graph_to_json(g));
  }
  return 0;
}

int cmd_measure(const Options& opt, const std::string& input) {
  auto g = load_graph(input);
  if (g.edge_count() == 0) throw bicov::domain_error("graph has no edges after normalization");
  json j;
  j["a_size"] = g.a_size();
  j["b_size"] = g.b_size();
  j["edges"] = g.edge_count();
  j["stripped"] = g.stripped_labels();
  const auto kap = bicov::kappa(g, opt.guard_subsets);
  const auto lo = bicov::cov_lower_bound(g, opt.guard_subsets);
  j["kappa"] = bicov::rational_to_string(kap);
  j["cov_lower"] = bicov::rational_to_string(lo.cov_lower);
  j["rect_lower"] = bicov::rational_to_string(lo.rect_lower);
  j["max_balanced_k"] = bicov::max_balanced_k(g, opt.guard_subsets);

  const bool within_exact = g.edge_count() <= opt.guard_edges;
  if (opt.force_exact && !within_exact) {
    throw bicov::resource_limit_error("measure --exact: |E| = " + std::to_string(g.edge_count()) +
                                      " exceeds --guard-edges " + std::to_string(opt.guard_edges));
  }
  j["cov_greedy"] = nullptr;
  j["cov_exact"] = nullptr;
  j["z_lp"] = nullptr;
  j["eta_star"] = nullptr;
  try {
    // the cover quantities all live on the set-cover view; enumerating every
    // biclique may itself exceed the guard, in which case they stay null
    auto bi = bicov::biclique_instance(g, opt.guard_subsets);
    j["cov_greedy"] = bicov::rational_to_string(bicov::greedy(bi.instance).total_cost);
    bicov::ExactOptGuards guards;
    guards.max_universe = opt.guard_edges;
    if (within_exact && !opt.greedy_only) {
      j["cov_exact"] = bicov::rational_to_string(bicov::exact_opt(bi.instance, guards).total_cost);
      j["z_lp"] = bicov::rational_to_string(bicov::lp_relax(bi.instance, guards));
    }
    if (g.edge_count() <= 20) {
      j["eta_star"] = json{{"exact", true},
                           {"value", bicov::rational_to_string(bicov::eta_star(bi.instance))}};
    } else if (g.edge_count() <= 62) {
      auto est = bicov::eta_star_estimate(bi.instance, 4096, opt.seed);
      j["eta_star"] = json{{"exact", false}, {"value", bicov::rational_to_string(est.value)}};
    }
  } catch (const bicov::resource_limit_error& e) {
    if (opt.force_exact) throw;
    j["skipped"] = e.what();
  }
  const int total = g.a_size() + g.b_size();
  if (total < 63 && (std::uint64_t(1) << total) <= opt.guard_subsets) {
    j["induced_ratio_max"] =
        bicov::rational_to_string(bicov::induced_ratio_max(g, opt.guard_subsets));
  } else {
    j["induced_ratio_max"] = nullptr;
  }
  if (opt.format == "table") {
    std::ostringstream os;
    for (auto it = j.begin(); it != j.end(); ++it) {
      os << std::left << std::setw(20) << it.key() << " "
         << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump()) << "\n";
    }
    emit(opt, os.str());
  } else {
    emit_json(opt, j);
  }
  return 0;
}

int cmd_chain(const Options& opt, const std::string& path) {
  auto inst = bicov::instance_from_json(load_json_file(path));
  bicov::ExactOptGuards guards;
  guards.max_universe = opt.guard_edges;
  auto rep = bicov::verify_chain(inst, guards);
  json j;
  j["eta_star"] = bicov::rational_to_string(rep.eta_star_value);
  j["z_lp"] = bicov::rational_to_string(rep.lp_value);
  j["opt"] = bicov::rational_to_string(rep.opt_cost);
  j["greedy"] = bicov::rational_to_string(rep.greedy_cost);
  j["h_n"] = bicov::rational_to_string(rep.h_n);
  j["h_n_eta_star"] = bicov::rational_to_string(rep.h_n * rep.eta_star_value);
  j["holds"] = true;
  if (opt.format == "table") {
    std::ostringstream os;
    os << "eta* <= Z*_LP <= OPT <= Greedy <= H_n eta*\n"
       << bicov::rational_to_string(rep.eta_star_value) << " <= "
       << bicov::rational_to_string(rep.lp_value) << " <= "
       << bicov::rational_to_string(rep.opt_cost) << " <= "
       << bicov::rational_to_string(rep.greedy_cost) << " <= "
       << bicov::rational_to_string(rep.h_n * rep.eta_star_value) << "\n";
    emit(opt, os.str());
  } else {
    emit_json(opt, j);
  }
  return 0;
}

int cmd_bridge(const Options& opt, const std::string& input) {
  auto g = load_graph(input);
  if (g.edge_count() == 0) throw bicov::domain_error("graph has no edges after normalization");
  auto l = bicov::language_of(g);

  auto bi = bicov::biclique_instance(g, opt.guard_subsets);
  bicov::ExactOptGuards guards;
  guards.max_universe = opt.guard_edges;
  const bool exact = g.edge_count() <= opt.guard_edges && !opt.greedy_only;
  auto sol = exact ? bicov::exact_opt(bi.instance, guards) : bicov::greedy(bi.instance);
  auto cover = bicov::solution_cover(bi, sol);

  auto direct = bicov::direct_network(g);
  auto depth2 = bicov::cover_to_depth2(g, cover);
  const auto& network = direct.size() <= depth2.size() ? direct : depth2;

  auto nfa_cover = bicov::nfa_from_cover(cover, l);
  auto nfa_net = bicov::nfa_from_network(network, l);
  auto eps_free = bicov::eliminate_epsilon(nfa_net);
  auto round_trip = bicov::cover_from_nfa(nfa_cover);

  const auto words = bicov::words_of(l);
  json j;
  j["cover_weight"] = cover.weight();
  j["cover_exact"] = exact;
  j["words"] = static_cast<long long>(words.size());
  j["network_size"] = network.size();
  j["nfa_from_cover"] = bicov::nfa_to_json(nfa_cover);
  j["nfa_from_network"] = bicov::nfa_to_json(nfa_net);
  j["epsilon_free"] = bicov::nfa_to_json(eps_free);
  j["sizes"] = json{{"nfa_from_cover", nfa_cover.size()},
                    {"nfa_from_network", nfa_net.size()},
                    {"epsilon_free", eps_free.size()}};
  j["equivalent"] =
      json{{"cover_nfa_matches_language", bicov::language_enumerate(nfa_cover) == words},
           {"network_nfa_matches_language", bicov::language_enumerate(nfa_net) == words},
           {"epsilon_free_matches_language", bicov::language_enumerate(eps_free) == words},
           {"cover_round_trips", round_trip.cover.bicliques == cover.bicliques}};
  if (opt.format == "dot") {
    emit(opt, bicov::nfa_to_dot(nfa_cover));
  } else {
    emit_json(opt, j);
  }
  return 0;
}

int cmd_report(const Options& opt, const std::vector<std::string>& files,
               const std::optional<std::string>& delta, const std::optional<std::string>& r,
               const std::optional<std::string>& alpha) {
  if (delta || r || alpha) {
    if (!(delta && r && alpha)) {
      throw bicov::domain_error("report --delta/--r/--alpha must be given together");
    }
    const auto d = bicov::rational_from_string(*delta);
    const auto rr = bicov::rational_from_string(*r);
    const auto a = bicov::rational_from_string(*alpha);
    if (!(a > 0 && a <= 1)) throw bicov::domain_error("alpha must lie in (0,1]");
    const auto beta = bicov::beta_exponent(d, rr, a);
    const auto bound = (bicov::rational(2) + a) / (bicov::rational(1) + a);
    json j;
    j["beta"] = bicov::rational_to_string(beta);
    j["bound"] = bicov::rational_to_string(bound);
    j["within_bound"] = beta <= bound;
    emit_json(opt, j);
    return 0;
  }
  if (files.size() != 3) {
    throw bicov::domain_error("report needs GRAPH NETWORK COVER files (or --delta --r --alpha)");
  }
  auto g = bicov::graph_from_json(load_json_file(files[0]));
  auto network = bicov::network_from_json(load_json_file(files[1]));
  auto cover = bicov::cover_from_json(load_json_file(files[2]), g);
  auto rep = bicov::make_bound_report(g, network, cover, opt.guard_subsets);
  emit_json(opt, bicov::bound_report_to_json(rep));
  return 0;
}

int cmd_blowup(const Options& opt, int dmax) {
  if (dmax < 2 || dmax % 2 != 0) {
    throw bicov::domain_error("blowup needs an even dmax >= 2");
  }
  json rows = json::array();
  for (int d = 2; d <= dmax; d += 2) {
    auto g = bicov::orthogonality_graph(d);
    auto lo = bicov::cov_lower_bound(g, opt.guard_subsets);
    auto inv = bicov::is_permutation_invariant(g);
    auto pn = bicov::build_perm_invariant_network(d, inv.signatures);
    if (!bicov::realizes(pn.network, g)) {
      throw bicov::theorem_violation("layered network failed to realize the orthogonality graph");
    }
    auto mc = bicov::midpoint_cut_cover(d, inv.signatures);
    json row;
    row["d"] = d;
    row["n"] = 1 << d;
    row["edges"] = g.edge_count();
    row["kappa"] = bicov::rational_to_string(bicov::kappa(g, opt.guard_subsets));
    row["cov_lower"] = bicov::rational_to_string(lo.cov_lower);
    row["network_size"] = pn.network.size();
    row["network_size_unpruned"] = pn.unpruned_edges;
    row["midpoint_weight"] = mc.weight();
    row["ratio"] = bicov::rational_to_string(lo.cov_lower / pn.network.size());
    rows.push_back(std::move(row));
  }
  if (opt.format == "table") {
    std::ostringstream os;
    os << std::left << std::setw(4) << "d" << std::setw(6) << "n" << std::setw(8) << "edges"
       << std::setw(8) << "kappa" << std::setw(12) << "cov_lower" << std::setw(10) << "netsize"
       << std::setw(12) << "unpruned" << std::setw(10) << "midpoint" << "ratio\n";
    for (const auto& row : rows) {
      os << std::left << std::setw(4) << row["d"].get<int>() << std::setw(6)
         << row["n"].get<int>() << std::setw(8) << row["edges"].get<long long>() << std::setw(8)
         << row["kappa"].get<std::string>() << std::setw(12)
         << row["cov_lower"].get<std::string>() << std::setw(10)
         << row["network_size"].get<long long>() << std::setw(12)
         << row["network_size_unpruned"].get<long long>() << std::setw(10)
         << row["midpoint_weight"].get<long long>() << row["ratio"].get<std::string>() << "\n";
    }
    emit(opt, os.str());
  } else {
    emit_json(opt, json{{"rows", rows}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biclique covers, rectifier networks and weighted set cover, exactly"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  app.add_option("--format", opt.format, "output format: json, dot or table")
      ->check(CLI::IsMember({"json", "dot", "table"}));
  app.add_option("--seed", opt.seed, "seed for sampled estimates");
  app.add_option("--guard-subsets", opt.guard_subsets,
                 "candidate guard for exhaustive enumerations");
  app.add_option("--guard-edges", opt.guard_edges, "universe guard for exact Cov / LP");
  app.add_flag("--exact", opt.force_exact, "fail instead of skipping exact Cov");
  app.add_flag("--greedy-only", opt.greedy_only, "skip the exact cover solver");
  app.add_option("-o,--output", opt.out_file, "write output to a file instead of stdout");

  std::string gen_family, measure_input, chain_file, bridge_input;
  auto* gen = app.add_subcommand("gen", "generate a graph family");
  gen->add_option("family", gen_family,
                  "orthogonal:d | circulant:n | matching:n | random:na,nb,p,seed")
      ->required();

  auto* measure = app.add_subcommand("measure", "compute measures and bounds for a graph");
  measure->add_option("graph", measure_input, "graph JSON file or family spec")->required();

  auto* chain = app.add_subcommand("chain", "verify the set-cover inequality chain");
  chain->add_option("instance", chain_file, "set cover instance JSON file")->required();

  auto* bridge = app.add_subcommand("bridge", "two-letter language / NFA constructions");
  bridge->add_option("graph", bridge_input, "graph (= language) JSON file or family spec")
      ->required();

  std::vector<std::string> report_files;
  std::optional<std::string> rep_delta, rep_r, rep_alpha;
  auto* report = app.add_subcommand("report", "bound report for graph + network + cover");
  report->add_option("files", report_files, "GRAPH NETWORK COVER JSON files")->expected(0, 3);
  report->add_option("--delta", rep_delta, "exponent delta (exact rational)");
  report->add_option("--r", rep_r, "exponent r (exact rational)");
  report->add_option("--alpha", rep_alpha, "exponent alpha in (0,1] (exact rational)");

  int blowup_dmax = 6;
  auto* blowup = app.add_subcommand("blowup", "orthogonality-family blow-up table");
  blowup->add_option("dmax", blowup_dmax, "largest even dimension")->required();

  try {
    app.parse(argc, argv);
    if (*gen) return cmd_gen(opt, gen_family);
    if (*measure) return cmd_measure(opt, measure_input);
    if (*chain) return cmd_chain(opt, chain_file);
    if (*bridge) return cmd_bridge(opt, bridge_input);
    if (*report) return cmd_report(opt, report_files, rep_delta, rep_r, rep_alpha);
    if (*blowup) return cmd_blowup(opt, blowup_dmax);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const bicov::theorem_violation& e) {
    std::cerr << "theorem violation (implementation bug): " << e.what() << "\n";
    return 4;
  } catch (const bicov::resource_limit_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 3;
  } catch (const bicov::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
