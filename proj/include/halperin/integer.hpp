#pragma once

// Arbitrary-precision integer used throughout the library. Determinants and
// family parameters grow without bound, so no fixed-width type is used for
// domain values.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace halperin {

// Expression templates are disabled so Int behaves like a plain value type
// in ternaries, lambdas and `auto`.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

inline std::string to_string(const Int& v) { return v.str(); }

/// Least nonnegative residue of `a` modulo `m` (m >= 1).
inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Floor division for positive divisor.
inline Int div_floor(const Int& a, const Int& d) {
  Int q = a / d;
  if ((a % d != 0) && (a < 0)) --q;
  return q;
}

inline bool is_odd(const Int& v) { return (v % 2) != 0; }

}  // namespace halperin
