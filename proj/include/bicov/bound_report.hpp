#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "bicov/biclique_enum.hpp"
#include "bicov/bipartite_graph.hpp"
#include "bicov/errors.hpp"
#include "bicov/rational.hpp"
#include "bicov/rectifier.hpp"

namespace bicov {

// beta = (delta + alpha*r) / (r*(1+alpha)), exact.
inline rational beta_exponent(const rational& delta, const rational& r, const rational& alpha) {
  if (r <= 0 || alpha <= 0) {
    throw domain_error("beta exponent needs r > 0 and alpha > 0");
  }
  return (delta + alpha * r) / (r * (1 + alpha));
}

// beta <= 1 + 1/(1+alpha), by cross-multiplied exact comparison. Holds
// whenever delta <= 2r.
inline bool beta_within_bound(const rational& delta, const rational& r, const rational& alpha) {
  // (delta + alpha r) / (r (1+alpha)) <= (2+alpha)/(1+alpha)
  // <=> delta + alpha r <= r (2+alpha) <=> delta <= 2 r
  return beta_exponent(delta, r, alpha) <= (rational(2) + alpha) / (rational(1) + alpha);
}

// Bound summary for a graph together with the best known cover and network.
// The logarithmic exponents are display-only doubles; every comparison is made
// on the exact pre-log quantities.
struct BoundReport {
  long long n = 0;           // |A| + |B|
  long long edge_count = 0;  // |E|
  rational kappa_value;
  rational cov_lower;   // |E| / kappa
  rational rect_lower;  // |E| / kappa^2, reported without asserting tightness
  long long cov_upper = 0;   // weight of the supplied (validated) cover
  long long rect_upper = 0;  // size of the supplied (realizing) network
  double delta = 0;          // log_n |E|
  double k = 0;              // log_n kappa
  double r = 0;              // log_n rect_upper
  std::optional<double> alpha;  // solves cov_upper = |E| / kappa^alpha when in (0,1]
  std::optional<double> beta;   // (delta + alpha r) / (r (1 + alpha))
  std::optional<bool> beta_bound_ok;  // exact check |E| <= rect_upper^2 when alpha defined
};

inline BoundReport make_bound_report(const BipartiteGraph& g, const RectifierNetwork& network,
                                     const BicliqueCover& cover,
                                     std::uint64_t enum_guard = kDefaultEnumGuard) {
  if (auto res = realizes(network, g); !res) {
    throw validation_error("report network does not realize the graph",
                           "(" + res.a_label + "," + res.b_label +
                               (res.spurious ? ") spurious" : ") missing"));
  }
  BoundReport rep;
  rep.cov_upper = validate_cover(g, cover);
  rep.rect_upper = network.size();
  rep.n = g.a_size() + g.b_size();
  rep.edge_count = g.edge_count();
  rep.kappa_value = kappa(g, enum_guard);
  rep.cov_lower = rational(rep.edge_count) / rep.kappa_value;
  rep.rect_lower = rational(rep.edge_count) / (rep.kappa_value * rep.kappa_value);
  if (rep.cov_lower > rep.cov_upper) {
    throw theorem_violation("validated cover weighs less than |E|/kappa");
  }
  const double log_n = std::log(static_cast<double>(rep.n));
  rep.delta = std::log(static_cast<double>(rep.edge_count)) / log_n;
  rep.k = std::log(static_cast<double>(rep.kappa_value)) / log_n;
  rep.r = std::log(static_cast<double>(rep.rect_upper)) / log_n;
  // alpha in (0,1] exists iff cov_upper < |E| and cov_upper * kappa >= |E|
  if (rational(rep.cov_upper) < rational(rep.edge_count) &&
      rational(rep.cov_upper) * rep.kappa_value >= rational(rep.edge_count) &&
      rep.kappa_value > 1) {
    const double a = std::log(static_cast<double>(rational(rep.edge_count) / rep.cov_upper)) /
                     std::log(static_cast<double>(rep.kappa_value));
    rep.alpha = a;
    rep.beta = (rep.delta + a * rep.r) / (rep.r * (1 + a));
    // exact form of beta <= 1 + 1/(1+alpha): delta <= 2r, i.e. |E| <= rect_upper^2
    rep.beta_bound_ok =
        bigint(rep.edge_count) <= bigint(rep.rect_upper) * bigint(rep.rect_upper);
    if (!*rep.beta_bound_ok) {
      throw theorem_violation("beta exceeded 1 + 1/(1+alpha) on a validated report");
    }
  }
  return rep;
}

}  // namespace bicov
