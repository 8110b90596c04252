#include "rmetric/numeric.hpp"

#include <algorithm>
#include <cctype>

#include "rmetric/errors.hpp"

namespace rmetric {

std::string to_string(const BigInt& v) { return v.str(); }

std::string to_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& v, int digits) {
  BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  std::string out;
  if (num < 0) {
    out += '-';
    num = -num;
  }
  const BigInt whole = num / den;
  BigInt rem = num % den;
  out += whole.str();
  if (digits > 0) {
    out += '.';
    for (int i = 0; i < digits; ++i) {
      rem *= 10;
      out += static_cast<char>('0' + static_cast<int>(rem / den));
      rem %= den;
    }
  }
  return out;
}

double to_double(const Rational& v) { return v.convert_to<double>(); }

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) throw DomainError("empty number in '" + std::string(text) + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw DomainError("bad number '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) {
        throw DomainError("bad number '" + std::string(text) + "'");
      }
    }
    // boost reads a leading 0 as an octal prefix
    const bool negative = s[0] == '-';
    const std::size_t first = std::min(s.find_first_not_of('0', i), s.size() - 1);
    const BigInt magnitude(std::string(s.substr(first)));
    return negative ? BigInt(-magnitude) : magnitude;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string digits = std::string(text.substr(0, dot)) + std::string(frac);
    if (digits == "-" || digits == "+" || digits.empty()) digits += "0";
    const BigInt scaled = parse_int(digits);
    return Rational(scaled, ipow(BigInt(10), static_cast<unsigned>(frac.size())));
  }
  return Rational(parse_int(text));
}

BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

}  // namespace rmetric
