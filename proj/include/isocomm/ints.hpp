#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace isocomm {

// Exact arbitrary-precision integer used for word exponents, conjugate
// indices, center coefficients and matrix entries. All arithmetic in this
// library is exact; overflow is never an accepted failure mode.
using Int = boost::multiprecision::cpp_int;

// Step budgets for bounded searches and semi-decisions.
using Budget = std::uint64_t;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}

}  // namespace isocomm
