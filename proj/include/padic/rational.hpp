#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace padic {

using Int = boost::multiprecision::cpp_int;

/// Arbitrary-size rational, kept in lowest terms with positive denominator
/// by the backend itself.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "num/den" or a plain (possibly signed) integer.
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Renders as "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// base^exp for nonnegative exp.
Int pow_int(const Int& base, unsigned long exp);

} // namespace padic
