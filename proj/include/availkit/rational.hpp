#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

namespace availkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double.
inline Rational to_rational(double x) { return Rational(x); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Decimal digit string to integer. cpp_int would read a leading 0 as octal.
inline BigInt decimal_integer(std::string_view digits) {
  auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return BigInt(0);
  return BigInt(std::string(digits.substr(first)));
}

/// Parses `digits[.digits]` or `digits/digits` exactly; 0.1 becomes 1/10.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto all_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    BigInt d = decimal_integer(den);
    if (d == 0) return std::nullopt;
    return Rational(decimal_integer(num), d);
  }
  auto dot = text.find('.');
  auto whole = text.substr(0, dot);
  if (!all_digits(whole)) return std::nullopt;
  if (dot == std::string_view::npos) return Rational(decimal_integer(whole));
  auto frac = text.substr(dot + 1);
  if (!all_digits(frac)) return std::nullopt;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
  BigInt num = decimal_integer(whole) * scale + decimal_integer(frac);
  return Rational(num, scale);
}

/// `p/q` in lowest terms, or just `p` when q = 1.
inline std::string rational_string(const Rational& r) {
  auto d = boost::multiprecision::denominator(r);
  if (d == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + d.str();
}

/// Exact decimal expansion if the denominator is of the form 2^a 5^b.
inline std::optional<std::string> terminating_decimal(const Rational& r) {
  if (r < 0) return std::nullopt;
  BigInt d = boost::multiprecision::denominator(r);
  unsigned twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1) return std::nullopt;
  unsigned places = std::max(twos, fives);
  BigInt scaled = boost::multiprecision::numerator(r) *
                  boost::multiprecision::pow(BigInt(10), places) /
                  boost::multiprecision::denominator(r);
  std::string digits = scaled.str();
  if (places == 0) return digits;
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  return digits;
}

/// Correctly rounded (half-even) decimal with `sig` significant digits.
/// Trailing zeros are kept so every value carries the same precision.
inline std::string format_significant(const Rational& value, int sig = 12) {
  using boost::multiprecision::pow;
  if (value == 0) return "0";
  bool negative = value < 0;
  Rational x = negative ? Rational(-value) : value;

  // Find e with 10^e <= x < 10^(e+1).
  int e = static_cast<int>(std::floor(std::log10(to_double(x))));
  auto power = [](int k) {
    return k >= 0 ? Rational(pow(BigInt(10), static_cast<unsigned>(k)))
                  : Rational(BigInt(1), pow(BigInt(10), static_cast<unsigned>(-k)));
  };
  while (x < power(e)) --e;
  while (x >= power(e + 1)) ++e;

  auto round_half_even = [](const Rational& q) {
    BigInt n = boost::multiprecision::numerator(q), d = boost::multiprecision::denominator(q);
    BigInt floor = n / d, rem = n % d;
    BigInt twice = rem * 2;
    if (twice > d || (twice == d && floor % 2 == 1)) ++floor;
    return floor;
  };
  BigInt digits = round_half_even(x * power(sig - 1 - e));
  if (digits == pow(BigInt(10), static_cast<unsigned>(sig))) {
    digits /= 10;
    ++e;
  }
  std::string s = digits.str();
  std::string out;
  if (e >= sig - 1) {
    out = s + std::string(static_cast<std::size_t>(e - (sig - 1)), '0');
  } else if (e >= 0) {
    out = s.substr(0, e + 1) + "." + s.substr(e + 1);
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
  }
  return negative ? "-" + out : out;
}

inline std::string format_significant(double value, int sig = 12) {
  return format_significant(to_rational(value), sig);
}

}  // namespace availkit
