#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"
#include "bicov/rectifier.hpp"

namespace bicov {

// NFA with an explicit empty-word marker (symbol index kEpsilon, serialized as
// the empty string). Size is the number of transitions.
struct Nfa {
  static constexpr int kEpsilon = -1;

  struct Transition {
    int from;
    int symbol;  // index into alphabet, or kEpsilon
    int to;
    friend bool operator<(const Transition& x, const Transition& y) {
      return std::tie(x.from, x.symbol, x.to) < std::tie(y.from, y.symbol, y.to);
    }
    friend bool operator==(const Transition& x, const Transition& y) {
      return x.from == y.from && x.symbol == y.symbol && x.to == y.to;
    }
  };

  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<Transition> transitions;  // kept sorted and unique
  int start = 0;
  std::vector<int> accepting;  // sorted

  Nfa() = default;
  Nfa(std::vector<std::string> state_labels, std::vector<std::string> symbols,
      std::vector<Transition> trans, int start_state, std::vector<int> accepting_states)
      : states(std::move(state_labels)),
        alphabet(std::move(symbols)),
        transitions(std::move(trans)),
        start(start_state),
        accepting(std::move(accepting_states)) {
    auto check_unique = [](const std::vector<std::string>& v, const char* what) {
      std::set<std::string> seen(v.begin(), v.end());
      if (seen.size() != v.size()) throw domain_error(std::string("duplicate ") + what);
    };
    check_unique(states, "state label");
    check_unique(alphabet, "alphabet symbol");
    const int q = static_cast<int>(states.size());
    const int s = static_cast<int>(alphabet.size());
    if (start < 0 || start >= q) throw domain_error("start state out of range");
    for (const auto& t : transitions) {
      if (t.from < 0 || t.from >= q || t.to < 0 || t.to >= q) {
        throw domain_error("transition references an unknown state");
      }
      if (t.symbol != kEpsilon && (t.symbol < 0 || t.symbol >= s)) {
        throw domain_error("transition references an unknown symbol");
      }
    }
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    std::sort(accepting.begin(), accepting.end());
    accepting.erase(std::unique(accepting.begin(), accepting.end()), accepting.end());
    for (int f : accepting) {
      if (f < 0 || f >= q) throw domain_error("accepting state out of range");
    }
  }

  long long size() const { return static_cast<long long>(transitions.size()); }

  bool is_epsilon_free() const {
    return std::none_of(transitions.begin(), transitions.end(),
                        [](const Transition& t) { return t.symbol == kEpsilon; });
  }
};

// Finite language of two-letter words over disjoint alphabets; isomorphic to a
// bipartite graph. Every letter of either alphabet must occur in some word.
struct TwoLetterLanguage {
  std::vector<std::string> first_alphabet;
  std::vector<std::string> second_alphabet;
  std::vector<std::pair<int, int>> words;  // sorted (first-index, second-index)

  TwoLetterLanguage() = default;
  TwoLetterLanguage(std::vector<std::string> a, std::vector<std::string> b,
                    std::vector<std::pair<int, int>> w)
      : first_alphabet(std::move(a)), second_alphabet(std::move(b)), words(std::move(w)) {
    std::set<std::string> seen;
    for (const auto& l : first_alphabet) {
      if (!seen.insert(l).second) throw domain_error("duplicate letter: " + l);
    }
    for (const auto& l : second_alphabet) {
      if (!seen.insert(l).second) {
        throw domain_error("alphabets overlap or repeat a letter: " + l);
      }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::vector<bool> a_used(first_alphabet.size(), false), b_used(second_alphabet.size(), false);
    for (auto [x, y] : words) {
      if (x < 0 || x >= static_cast<int>(first_alphabet.size()) || y < 0 ||
          y >= static_cast<int>(second_alphabet.size())) {
        throw domain_error("word references an unknown letter");
      }
      a_used[x] = true;
      b_used[y] = true;
    }
    for (std::size_t i = 0; i < a_used.size(); ++i) {
      if (!a_used[i]) {
        throw domain_error("letter '" + first_alphabet[i] + "' occurs in no word");
      }
    }
    for (std::size_t j = 0; j < b_used.size(); ++j) {
      if (!b_used[j]) {
        throw domain_error("letter '" + second_alphabet[j] + "' occurs in no word");
      }
    }
  }
};

// The two views of the same object: L <-> G_L. Mutually inverse on
// isolated-vertex-free graphs.
inline BipartiteGraph graph_of(const TwoLetterLanguage& l) {
  return BipartiteGraph(l.first_alphabet, l.second_alphabet, l.words);
}

inline TwoLetterLanguage language_of(const BipartiteGraph& g) {
  return TwoLetterLanguage(g.a_labels(), g.b_labels(), g.edges());
}

namespace detail {

inline std::string fresh_state(std::set<std::string>& used, std::string stem) {
  while (used.count(stem)) stem = "_" + stem;
  used.insert(stem);
  return stem;
}

}  // namespace detail

// NFA from a rectifier network realizing G_L: spell the first letter into the
// matching source, traverse the network on epsilon moves, spell the second
// letter from the sink. Size = |E'| + |A| + |B|.
inline Nfa nfa_from_network(const RectifierNetwork& r, const TwoLetterLanguage& l) {
  const BipartiteGraph g = graph_of(l);
  if (auto res = realizes(r, g); !res) {
    throw domain_error("network does not realize the language graph (pair " + res.a_label + "," +
                       res.b_label + (res.spurious ? " spurious)" : " missing)"));
  }
  std::vector<std::string> states = r.labels();
  std::set<std::string> used(states.begin(), states.end());
  const int q0 = static_cast<int>(states.size());
  states.push_back(detail::fresh_state(used, "q0"));
  const int qf = static_cast<int>(states.size());
  states.push_back(detail::fresh_state(used, "qf"));

  std::vector<std::string> alphabet = l.first_alphabet;
  alphabet.insert(alphabet.end(), l.second_alphabet.begin(), l.second_alphabet.end());
  std::map<std::string, int> sym;
  for (std::size_t i = 0; i < alphabet.size(); ++i) sym[alphabet[i]] = static_cast<int>(i);

  std::vector<Nfa::Transition> delta;
  for (int s : r.sources()) {
    delta.push_back({q0, sym.at(r.labels()[s]), s});
  }
  for (int t : r.sinks()) {
    delta.push_back({t, sym.at(r.labels()[t]), qf});
  }
  for (auto [u, v] : r.edges()) {
    delta.push_back({u, Nfa::kEpsilon, v});
  }
  return Nfa(std::move(states), std::move(alphabet), std::move(delta), q0, {qf});
}

// Layered epsilon-free NFA from a biclique cover: one middle state per
// biclique. Size equals the cover weight.
inline Nfa nfa_from_cover(const BicliqueCover& cover, const TwoLetterLanguage& l) {
  const BipartiteGraph g = graph_of(l);
  validate_cover(g, cover);
  std::vector<std::string> states;
  std::set<std::string> used;
  const int q0 = 0;
  states.push_back(detail::fresh_state(used, "q0"));
  std::vector<int> mid(cover.bicliques.size());
  for (std::size_t m = 0; m < cover.bicliques.size(); ++m) {
    mid[m] = static_cast<int>(states.size());
    states.push_back(detail::fresh_state(used, "p" + std::to_string(m + 1)));
  }
  const int qf = static_cast<int>(states.size());
  states.push_back(detail::fresh_state(used, "qf"));

  std::vector<std::string> alphabet = l.first_alphabet;
  alphabet.insert(alphabet.end(), l.second_alphabet.begin(), l.second_alphabet.end());
  const int b_base = static_cast<int>(l.first_alphabet.size());

  std::vector<Nfa::Transition> delta;
  for (std::size_t m = 0; m < cover.bicliques.size(); ++m) {
    for (int a : cover.bicliques[m].a) delta.push_back({q0, a, mid[m]});
    for (int b : cover.bicliques[m].b) delta.push_back({mid[m], b_base + b, qf});
  }
  return Nfa(std::move(states), std::move(alphabet), std::move(delta), q0, {qf});
}

struct ExtractedCover {
  BicliqueCover cover;
  TwoLetterLanguage language;
  BipartiteGraph graph;
};

// Inverse of nfa_from_cover for layered epsilon-free automata. The structural
// preconditions of the extraction (trim, single accepting state, consistent
// layers 0/1/2) are validated, not assumed.
inline ExtractedCover cover_from_nfa(const Nfa& m) {
  if (!m.is_epsilon_free()) {
    throw domain_error("cover extraction requires an epsilon-free NFA");
  }
  if (m.accepting.size() != 1) {
    throw domain_error("cover extraction requires a single accepting state");
  }
  const int qf = m.accepting.front();
  if (qf == m.start) {
    throw domain_error("cover extraction: start state must not accept (the empty word)");
  }
  const int q = static_cast<int>(m.states.size());
  // trim: reachable from start and co-reachable to the accepting state
  std::vector<std::vector<int>> out(q), in(q);
  for (const auto& t : m.transitions) {
    out[t.from].push_back(t.to);
    in[t.to].push_back(t.from);
  }
  auto bfs = [&](int root, const std::vector<std::vector<int>>& adj) {
    std::vector<bool> vis(q, false);
    std::vector<int> stack{root};
    vis[root] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (!vis[w]) {
          vis[w] = true;
          stack.push_back(w);
        }
      }
    }
    return vis;
  };
  auto fwd = bfs(m.start, out), bwd = bfs(qf, in);
  for (int s = 0; s < q; ++s) {
    if (!fwd[s] || !bwd[s]) {
      throw domain_error("cover extraction requires a trim NFA; state '" + m.states[s] +
                         "' is not on any accepting path");
    }
  }
  // consistent layer per state
  std::vector<int> layer(q, -1);
  layer[m.start] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : m.transitions) {
      if (layer[t.from] >= 0) {
        if (layer[t.to] < 0) {
          layer[t.to] = layer[t.from] + 1;
          changed = true;
        } else if (layer[t.to] != layer[t.from] + 1) {
          throw domain_error("cover extraction requires a layered NFA; state '" + m.states[t.to] +
                             "' has inconsistent layers");
        }
      }
    }
  }
  for (int s = 0; s < q; ++s) {
    if (layer[s] < 0 || layer[s] > 2) {
      throw domain_error("cover extraction: state '" + m.states[s] + "' lies outside layers 0-2");
    }
  }
  if (layer[qf] != 2) {
    throw domain_error("cover extraction: accepting state must sit on layer 2");
  }
  // split the alphabet by layer usage
  std::set<int> a_syms, b_syms;
  for (const auto& t : m.transitions) {
    (layer[t.from] == 0 ? a_syms : b_syms).insert(t.symbol);
  }
  for (int s : a_syms) {
    if (b_syms.count(s)) {
      throw domain_error("symbol '" + m.alphabet[s] + "' is used on both layers");
    }
  }
  std::vector<std::string> first_alpha, second_alpha;
  std::map<int, int> a_id, b_id;
  for (int s : a_syms) {
    a_id[s] = static_cast<int>(first_alpha.size());
    first_alpha.push_back(m.alphabet[s]);
  }
  for (int s : b_syms) {
    b_id[s] = static_cast<int>(second_alpha.size());
    second_alpha.push_back(m.alphabet[s]);
  }
  std::vector<std::pair<int, int>> words;
  ExtractedCover out_cover;
  std::map<int, std::pair<std::vector<int>, std::vector<int>>> per_mid;
  for (const auto& t : m.transitions) {
    if (layer[t.from] == 0) {
      per_mid[t.to].first.push_back(a_id.at(t.symbol));
    } else {
      per_mid[t.from].second.push_back(b_id.at(t.symbol));
    }
  }
  for (auto& [midState, ab] : per_mid) {
    for (int a : ab.first) {
      for (int b : ab.second) words.emplace_back(a, b);
    }
    out_cover.cover.bicliques.emplace_back(std::move(ab.first), std::move(ab.second));
  }
  out_cover.language = TwoLetterLanguage(first_alpha, second_alpha, words);
  out_cover.graph = graph_of(out_cover.language);
  validate_cover(out_cover.graph, out_cover.cover);
  return out_cover;
}

// Closure-before-symbol epsilon elimination: delta' contains (p,a,q) whenever
// some p' in the epsilon closure of p steps to q on a, and p accepts iff its
// closure meets F. Language-preserving; states are kept as they are.
inline Nfa eliminate_epsilon(const Nfa& m) {
  const int q = static_cast<int>(m.states.size());
  std::vector<std::vector<int>> eps_out(q);
  for (const auto& t : m.transitions) {
    if (t.symbol == Nfa::kEpsilon) eps_out[t.from].push_back(t.to);
  }
  std::vector<std::vector<bool>> closure(q, std::vector<bool>(q, false));
  for (int s = 0; s < q; ++s) {
    std::vector<int> stack{s};
    closure[s][s] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : eps_out[v]) {
        if (!closure[s][w]) {
          closure[s][w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<Nfa::Transition> delta;
  for (int p = 0; p < q; ++p) {
    for (const auto& t : m.transitions) {
      if (t.symbol != Nfa::kEpsilon && closure[p][t.from]) {
        delta.push_back({p, t.symbol, t.to});
      }
    }
  }
  // transitions out of states unreachable in the result contribute nothing to
  // the language; drop them (the state set itself is kept as is)
  std::vector<bool> reachable(q, false);
  reachable[m.start] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& t : delta) {
      if (reachable[t.from] && !reachable[t.to]) {
        reachable[t.to] = true;
        changed = true;
      }
    }
  }
  std::erase_if(delta, [&](const Nfa::Transition& t) { return !reachable[t.from]; });
  std::vector<int> accepting;
  for (int p = 0; p < q; ++p) {
    for (int f : m.accepting) {
      if (closure[p][f]) {
        accepting.push_back(p);
        break;
      }
    }
  }
  return Nfa(m.states, m.alphabet, std::move(delta), m.start, std::move(accepting));
}

// Exact finite language of an acyclic NFA (epsilon edges included in the
// acyclicity requirement), as sets of symbol-label words.
inline std::set<std::vector<std::string>> language_enumerate(const Nfa& m) {
  const int q = static_cast<int>(m.states.size());
  std::vector<std::vector<std::pair<int, int>>> out(q);  // (symbol, to)
  std::vector<int> indeg(q, 0);
  for (const auto& t : m.transitions) {
    out[t.from].emplace_back(t.symbol, t.to);
    ++indeg[t.to];
  }
  // acyclicity via Kahn
  {
    std::vector<int> deg = indeg, order;
    std::vector<int> stack;
    for (int s = 0; s < q; ++s) {
      if (deg[s] == 0) stack.push_back(s);
    }
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (auto [sym, w] : out[v]) {
        if (--deg[w] == 0) stack.push_back(w);
      }
    }
    if (static_cast<int>(order.size()) != q) {
      throw domain_error("language enumeration requires an acyclic transition graph");
    }
  }
  std::vector<bool> is_accepting(q, false);
  for (int f : m.accepting) is_accepting[f] = true;
  std::vector<std::optional<std::set<std::vector<int>>>> memo(q);
  auto langs = [&](auto&& self, int s) -> const std::set<std::vector<int>>& {
    if (memo[s]) return *memo[s];
    std::set<std::vector<int>> words;
    if (is_accepting[s]) words.insert(std::vector<int>{});
    for (auto [sym, w] : out[s]) {
      for (const auto& suffix : self(self, w)) {
        std::vector<int> word;
        if (sym != Nfa::kEpsilon) word.push_back(sym);
        word.insert(word.end(), suffix.begin(), suffix.end());
        words.insert(std::move(word));
      }
    }
    memo[s] = std::move(words);
    return *memo[s];
  };
  std::set<std::vector<std::string>> labelled;
  for (const auto& word : langs(langs, m.start)) {
    std::vector<std::string> w;
    w.reserve(word.size());
    for (int sym : word) w.push_back(m.alphabet[sym]);
    labelled.insert(std::move(w));
  }
  return labelled;
}

inline bool equivalent(const Nfa& m1, const Nfa& m2) {
  return language_enumerate(m1) == language_enumerate(m2);
}

// The word set of a two-letter language in the same form language_enumerate
// produces, for direct comparison.
inline std::set<std::vector<std::string>> words_of(const TwoLetterLanguage& l) {
  std::set<std::vector<std::string>> out;
  for (auto [a, b] : l.words) {
    out.insert({l.first_alphabet[a], l.second_alphabet[b]});
  }
  return out;
}

}  // namespace bicov
