#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace mmb {

// Arbitrary-precision integers and rationals. Everything in the exact
// layer (moments, Hankel determinants, Hermite coefficients) lives on
// these types; the floating layer converts at the boundary.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_string(const Rat& r) { return r.str(); }

inline double rat_double(const Rat& r) { return static_cast<double>(r); }

inline long double rat_long_double(const Rat& r) {
  return static_cast<long double>(r);
}

}  // namespace mmb
