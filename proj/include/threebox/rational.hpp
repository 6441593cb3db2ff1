#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace threebox {

// All bookkeeping on the classical side is exact. cpp_rational keeps
// numerator/denominator as arbitrary-precision integers and always stores
// the canonical reduced form, so == is semantic equality.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "n", "-n", "n/d" with d > 0 (whitespace not allowed).
// Throws std::invalid_argument on malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// Canonical form matching parse_rational: "n" or "n/d".
std::string format_rational(const Rational& value);

// Best rational with denominator <= max_denominator within tol of x, found
// by continued fractions. When no such fraction exists the exact binary
// value of x is returned, so the result always represents x faithfully.
Rational snap_to_rational(double x, std::int64_t max_denominator = 1000000,
                          double tol = 1e-9);

inline double to_double(const Rational& value) { return static_cast<double>(value); }

}  // namespace threebox
