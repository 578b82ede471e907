#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace gradeq {

/// Exact rational with arbitrary-precision numerator and denominator.
/// Always stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q", "p" or "-p/q". Throws ValidationError on malformed text or q = 0.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

} // namespace gradeq
