#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "afspin/error.hpp"

namespace afspin {

// Exponent and matrix entry type. Everything downstream assumes exact
// arithmetic; never replace this with a fixed-width integer.
using Int = boost::multiprecision::cpp_int;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

// a mod d with result in [0, d); requires d > 0. cpp_int's % truncates
// toward zero, which is the wrong convention for exponent reduction.
inline Int mod_floor(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += d;
  return r;
}

// Exact quotient; refuses to round.
inline Int div_exact(const Int& a, const Int& d) {
  if (d == 0 || a % d != 0) fail(errc::intlin, "non-exact division");
  return a / d;
}

inline long long to_ll(const Int& a) {
  if (a > std::numeric_limits<long long>::max() ||
      a < std::numeric_limits<long long>::min())
    fail(errc::intlin, "integer too large for fixed-width conversion");
  return a.convert_to<long long>();
}

inline std::string to_string(const Int& a) { return a.str(); }

}  // namespace afspin
