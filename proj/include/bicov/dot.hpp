#pragma once

#include <sstream>
#include <string>

#include "bicov/automata.hpp"
#include "bicov/bipartite_graph.hpp"
#include "bicov/rectifier.hpp"

namespace bicov {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

// Directed a->b edges, class-A nodes ranked left.
inline std::string graph_to_dot(const BipartiteGraph& g) {
  std::ostringstream os;
  os << "digraph bipartite {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  { rank=source;";
  for (const auto& l : g.a_labels()) os << ' ' << detail::dot_quote(l) << ';';
  os << " }\n  { rank=sink;";
  for (const auto& l : g.b_labels()) os << ' ' << detail::dot_quote(l) << ';';
  os << " }\n";
  for (auto [a, b] : g.edges()) {
    os << "  " << detail::dot_quote(g.a_labels()[a]) << " -> "
       << detail::dot_quote(g.b_labels()[b]) << ";\n";
  }
  os << "}\n";
  return os.str();
}

// Edges directed from left to right, sources leftmost.
inline std::string network_to_dot(const RectifierNetwork& r) {
  std::ostringstream os;
  os << "digraph network {\n  rankdir=LR;\n  node [shape=circle];\n";
  os << "  { rank=source;";
  for (int s : r.sources()) os << ' ' << detail::dot_quote(r.labels()[s]) << ';';
  os << " }\n  { rank=sink;";
  for (int t : r.sinks()) os << ' ' << detail::dot_quote(r.labels()[t]) << ';';
  os << " }\n";
  for (auto [u, v] : r.edges()) {
    os << "  " << detail::dot_quote(r.labels()[u]) << " -> " << detail::dot_quote(r.labels()[v])
       << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string nfa_to_dot(const Nfa& m) {
  std::ostringstream os;
  os << "digraph nfa {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (int f : m.accepting) {
    os << "  " << detail::dot_quote(m.states[f]) << " [shape=doublecircle];\n";
  }
  os << "  __start [shape=point];\n  __start -> " << detail::dot_quote(m.states[m.start])
     << ";\n";
  for (const auto& t : m.transitions) {
    os << "  " << detail::dot_quote(m.states[t.from]) << " -> " << detail::dot_quote(m.states[t.to])
       << " [label=" << detail::dot_quote(t.symbol == Nfa::kEpsilon ? "eps" : m.alphabet[t.symbol])
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace bicov
