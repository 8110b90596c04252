#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rmetric {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const BigInt& v);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& v);

// Fixed-point decimal rendering, truncated toward zero; for display only.
std::string to_decimal(const Rational& v, int digits = 12);

double to_double(const Rational& v);

// Accepts "p/q", an integer, or a finite decimal such as "0.125".
Rational parse_rational(std::string_view text);

BigInt ipow(const BigInt& base, unsigned exponent);

inline std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace rmetric
