#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <span>
#include <string>
#include <string_view>

namespace zefc {

using Rational = boost::multiprecision::cpp_rational;

// Accepts "a/b", integers and plain decimals ("0.125"). Signs are parsed so
// that callers can report negative probabilities themselves.
Rational parse_rational(std::string_view text);

// "a/b", or "a" when the denominator is 1.
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

Rational sum(std::span<const Rational> values);

} // namespace zefc
