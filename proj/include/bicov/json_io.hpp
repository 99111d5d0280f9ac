#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bicov/automata.hpp"
#include "bicov/bipartite_graph.hpp"
#include "bicov/bound_report.hpp"
#include "bicov/errors.hpp"
#include "bicov/rational.hpp"
#include "bicov/rectifier.hpp"
#include "bicov/setcover.hpp"

namespace bicov {

using json = nlohmann::json;

// Graph JSON: {"a": [labels], "b": [labels], "edges": [[a-label, b-label], ...]}
inline json graph_to_json(const BipartiteGraph& g) {
  json j;
  j["a"] = g.a_labels();
  j["b"] = g.b_labels();
  json edges = json::array();
  for (auto [a, b] : g.edges()) {
    edges.push_back(json::array({g.a_labels()[a], g.b_labels()[b]}));
  }
  j["edges"] = std::move(edges);
  return j;
}

inline BipartiteGraph graph_from_json(const json& j) {
  try {
    std::vector<std::string> a = j.at("a").get<std::vector<std::string>>();
    std::vector<std::string> b = j.at("b").get<std::vector<std::string>>();
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw domain_error("graph edge entries must be [a-label, b-label] pairs");
      }
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return BipartiteGraph::from_label_edges(a, b, edges);
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed graph JSON: ") + e.what());
  }
}

// Network JSON: {"vertices": [...], "edges": [[from,to],...], "sources": [...], "sinks": [...]}
inline json network_to_json(const RectifierNetwork& r) {
  json j;
  j["vertices"] = r.labels();
  json edges = json::array();
  for (auto [u, v] : r.edges()) {
    edges.push_back(json::array({r.labels()[u], r.labels()[v]}));
  }
  j["edges"] = std::move(edges);
  json sources = json::array(), sinks = json::array();
  for (int s : r.sources()) sources.push_back(r.labels()[s]);
  for (int t : r.sinks()) sinks.push_back(r.labels()[t]);
  j["sources"] = std::move(sources);
  j["sinks"] = std::move(sinks);
  return j;
}

inline RectifierNetwork network_from_json(const json& j) {
  try {
    std::vector<std::string> labels = j.at("vertices").get<std::vector<std::string>>();
    std::map<std::string, int> id;
    for (std::size_t i = 0; i < labels.size(); ++i) id[labels[i]] = static_cast<int>(i);
    auto lookup = [&](const std::string& l) {
      auto it = id.find(l);
      if (it == id.end()) throw domain_error("unknown vertex label '" + l + "'");
      return it->second;
    };
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw domain_error("network edge entries must be [from,to] pairs");
      }
      edges.emplace_back(lookup(e[0].get<std::string>()), lookup(e[1].get<std::string>()));
    }
    std::vector<int> sources, sinks;
    for (const auto& s : j.at("sources")) sources.push_back(lookup(s.get<std::string>()));
    for (const auto& t : j.at("sinks")) sinks.push_back(lookup(t.get<std::string>()));
    return RectifierNetwork(std::move(labels), std::move(edges), std::move(sources),
                            std::move(sinks));
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed network JSON: ") + e.what());
  }
}

// Cover JSON: {"bicliques": [{"a": [labels], "b": [labels]}, ...]}; labels
// refer to the accompanying graph.
inline json cover_to_json(const BipartiteGraph& g, const BicliqueCover& cover) {
  json arr = json::array();
  for (const auto& bc : cover.bicliques) {
    json a = json::array(), b = json::array();
    for (int i : bc.a) a.push_back(g.a_labels()[i]);
    for (int i : bc.b) b.push_back(g.b_labels()[i]);
    arr.push_back(json{{"a", std::move(a)}, {"b", std::move(b)}});
  }
  return json{{"bicliques", std::move(arr)}};
}

inline BicliqueCover cover_from_json(const json& j, const BipartiteGraph& g) {
  std::map<std::string, int> a_id, b_id;
  for (int i = 0; i < g.a_size(); ++i) a_id[g.a_labels()[i]] = i;
  for (int i = 0; i < g.b_size(); ++i) b_id[g.b_labels()[i]] = i;
  try {
    BicliqueCover cover;
    for (const auto& e : j.at("bicliques")) {
      std::vector<int> a, b;
      for (const auto& l : e.at("a")) {
        auto it = a_id.find(l.get<std::string>());
        if (it == a_id.end()) {
          throw domain_error("cover references unknown A-label '" + l.get<std::string>() + "'");
        }
        a.push_back(it->second);
      }
      for (const auto& l : e.at("b")) {
        auto it = b_id.find(l.get<std::string>());
        if (it == b_id.end()) {
          throw domain_error("cover references unknown B-label '" + l.get<std::string>() + "'");
        }
        b.push_back(it->second);
      }
      cover.bicliques.emplace_back(std::move(a), std::move(b));
    }
    return cover;
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed cover JSON: ") + e.what());
  }
}

// Instance JSON: {"universe": [...], "sets": [{"members": [...], "cost": "p/q"}, ...]};
// costs are exact fraction strings.
inline json instance_to_json(const SetCoverInstance& inst) {
  json sets = json::array();
  for (const auto& s : inst.sets) {
    json members = json::array();
    for (int e : s.members) members.push_back(inst.universe[e]);
    sets.push_back(json{{"cost", rational_to_string(s.cost)}, {"members", std::move(members)}});
  }
  return json{{"sets", std::move(sets)}, {"universe", inst.universe}};
}

inline SetCoverInstance instance_from_json(const json& j) {
  try {
    std::vector<std::string> universe = j.at("universe").get<std::vector<std::string>>();
    std::map<std::string, int> id;
    for (std::size_t i = 0; i < universe.size(); ++i) id[universe[i]] = static_cast<int>(i);
    std::vector<WeightedSet> sets;
    for (const auto& e : j.at("sets")) {
      WeightedSet s;
      s.cost = rational_from_string(e.at("cost").get<std::string>());
      for (const auto& l : e.at("members")) {
        auto it = id.find(l.get<std::string>());
        if (it == id.end()) {
          throw domain_error("set member '" + l.get<std::string>() + "' is not in the universe");
        }
        s.members.push_back(it->second);
      }
      sets.push_back(std::move(s));
    }
    return SetCoverInstance(std::move(universe), std::move(sets));
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed instance JSON: ") + e.what());
  }
}

// NFA JSON: {"states": [...], "alphabet": [...], "transitions": [[p, "sym", q], ...],
// "start": ..., "accepting": [...]}; the empty string denotes epsilon.
inline json nfa_to_json(const Nfa& m) {
  json j;
  j["states"] = m.states;
  j["alphabet"] = m.alphabet;
  json trans = json::array();
  for (const auto& t : m.transitions) {
    trans.push_back(json::array({m.states[t.from],
                                 t.symbol == Nfa::kEpsilon ? std::string() : m.alphabet[t.symbol],
                                 m.states[t.to]}));
  }
  j["transitions"] = std::move(trans);
  j["start"] = m.states[m.start];
  json acc = json::array();
  for (int f : m.accepting) acc.push_back(m.states[f]);
  j["accepting"] = std::move(acc);
  return j;
}

inline Nfa nfa_from_json(const json& j) {
  try {
    std::vector<std::string> states = j.at("states").get<std::vector<std::string>>();
    std::vector<std::string> alphabet = j.at("alphabet").get<std::vector<std::string>>();
    std::map<std::string, int> sid, aid;
    for (std::size_t i = 0; i < states.size(); ++i) sid[states[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < alphabet.size(); ++i) aid[alphabet[i]] = static_cast<int>(i);
    auto state = [&](const std::string& l) {
      auto it = sid.find(l);
      if (it == sid.end()) throw domain_error("unknown state '" + l + "'");
      return it->second;
    };
    std::vector<Nfa::Transition> trans;
    for (const auto& e : j.at("transitions")) {
      if (!e.is_array() || e.size() != 3) {
        throw domain_error("transitions must be [state, symbol, state] triples");
      }
      const std::string sym = e[1].get<std::string>();
      int symbol = Nfa::kEpsilon;
      if (!sym.empty()) {
        auto it = aid.find(sym);
        if (it == aid.end()) throw domain_error("unknown symbol '" + sym + "'");
        symbol = it->second;
      }
      trans.push_back({state(e[0].get<std::string>()), symbol, state(e[2].get<std::string>())});
    }
    std::vector<int> accepting;
    for (const auto& l : j.at("accepting")) accepting.push_back(state(l.get<std::string>()));
    return Nfa(std::move(states), std::move(alphabet), std::move(trans),
               state(j.at("start").get<std::string>()), std::move(accepting));
  } catch (const json::exception& e) {
    throw domain_error(std::string("malformed NFA JSON: ") + e.what());
  }
}

inline json bound_report_to_json(const BoundReport& r) {
  json j;
  j["n"] = r.n;
  j["edges"] = r.edge_count;
  j["kappa"] = rational_to_string(r.kappa_value);
  j["cov_lower"] = rational_to_string(r.cov_lower);
  j["rect_lower"] = rational_to_string(r.rect_lower);
  j["cov_upper"] = r.cov_upper;
  j["rect_upper"] = r.rect_upper;
  j["delta"] = r.delta;
  j["k"] = r.k;
  j["r"] = r.r;
  j["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
  j["beta"] = r.beta ? json(*r.beta) : json(nullptr);
  j["beta_bound_ok"] = r.beta_bound_ok ? json(*r.beta_bound_ok) : json(nullptr);
  return j;
}

}  // namespace bicov
