#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "conemetric/error.hpp"

namespace conemetric {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer lattice point. Coordinates stay small for every input we accept.
using LatticePoint = std::vector<long long>;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

namespace num {

inline long long to_ll(const Integer& z) {
  if (z > std::numeric_limits<long long>::max() || z < std::numeric_limits<long long>::min())
    throw DomainError(ErrorCode::InvalidArgument, "integer out of range");
  return z.convert_to<long long>();
}

inline long long floor_ll(double x) { return static_cast<long long>(std::floor(x)); }

inline long long floor_ll(const Rational& x) {
  const Integer& n = boost::multiprecision::numerator(x);
  const Integer& d = boost::multiprecision::denominator(x);
  Integer q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return to_ll(q);
}

inline bool is_integral(double x) { return std::isfinite(x) && std::floor(x) == x; }
inline bool is_integral(const Rational& x) { return boost::multiprecision::denominator(x) == 1; }

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }

template <class T>
T abs(const T& x) {
  return x < T(0) ? T(-x) : x;
}

template <class T>
T from_ll(long long v) {
  return T(v);
}

template <class T>
T half() {
  if constexpr (is_exact_v<T>)
    return Rational(1, 2);
  else
    return T(0.5);
}

// Nearest integer, ties to the even neighbour.
template <class T>
long long round_half_even(const T& x) {
  T shifted = x + half<T>();
  long long r = floor_ll(shifted);
  if (is_integral(shifted) && (r % 2 != 0)) r -= 1;
  return r;
}

template <class T>
T sum(const std::vector<T>& v) {
  T s(0);
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace num

// "p/q", "p", decimal ("-1.25", "3e-2") all parse exactly.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw DomainError(ErrorCode::MalformedInput, "not a number: '" + std::string(text) + "'");
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_int = [&](std::string_view s) -> Integer {
    s = trim(s);
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) fail();
    Integer z = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      z = z * 10 + (c - '0');
    }
    return neg ? Integer(-z) : z;
  };

  std::string_view s = trim(text);
  if (s.empty()) fail();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = parse_int(s.substr(0, slash));
    Integer q = parse_int(s.substr(slash + 1));
    if (q == 0) throw DomainError(ErrorCode::MalformedInput, "zero denominator");
    return Rational(p, q);
  }

  long long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    exponent = num::to_ll(parse_int(s.substr(e + 1)));
    s = s.substr(0, e);
  }
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (char c : s) {
    if (c == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (seen_dot) --exponent;
    } else {
      fail();
    }
  }
  if (!seen_digit || std::abs(exponent) > 4000) fail();
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::abs(exponent)));
  Rational r = exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
  return neg ? Rational(-r) : r;
}

inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline std::vector<Rational> parse_rationals(const std::vector<std::string>& items) {
  std::vector<Rational> out;
  out.reserve(items.size());
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

template <class T>
std::vector<double> to_doubles(const std::vector<T>& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(num::to_double(x));
  return out;
}

}  // namespace conemetric
