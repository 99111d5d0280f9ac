#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <string>

#include "bicov/errors.hpp"

namespace bicov {

// All order comparisons in this library are exact; floating point is only ever
// produced for display (see bound_report.hpp).
using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

// ab / (a+b): the inverse relative cost of covering a*b edges at weight a+b.
// Satisfies H(a,b) <= min(a,b) <= 2*H(a,b) for a,b > 0.
inline rational h_ratio(long long a, long long b) {
  if (a < 1 || b < 1) {
    throw domain_error("h_ratio requires positive arguments");
  }
  return rational(bigint(a) * b, bigint(a) + b);
}

// H_n = sum_{i in [n]} 1/i, exact.
inline rational harmonic(long long n) {
  rational h = 0;
  for (long long i = 1; i <= n; ++i) {
    h += rational(1, i);
  }
  return h;
}

// Canonical text form: "p" when the denominator is 1, otherwise "p/q",
// always in lowest terms with positive denominator.
inline std::string rational_to_string(const rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return rational(bigint(s));
    }
    bigint num(s.substr(0, slash));
    bigint den(s.substr(slash + 1));
    if (den == 0) {
      throw domain_error("rational with zero denominator: " + s);
    }
    return rational(num, den);
  } catch (const std::runtime_error&) {
    throw domain_error("cannot parse rational: " + s);
  }
}

}  // namespace bicov
