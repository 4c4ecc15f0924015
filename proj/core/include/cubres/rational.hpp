#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace cubres {

// Exact rational scalar.  Every rank, kernel, and page dimension in the engine
// is decided by exact arithmetic; there are no tolerances anywhere.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline std::string to_string(const Rat& q) { return q.str(); }

// Parses "a" or "a/b".
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(num, den);
}

}  // namespace cubres
