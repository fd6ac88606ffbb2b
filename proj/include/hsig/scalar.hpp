#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hsig {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double to_double(double x) { return x; }
  static bool is_finite(double x) { return std::isfinite(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static bool is_finite(const Rational&) { return true; }
};

template <class S>
double to_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

template <class S>
S from_rational(const Rational& q) {
  if constexpr (ScalarTraits<S>::exact) {
    return q;
  } else {
    return q.convert_to<double>();
  }
}

// Parses "p/q", "p" or "-p/q". Throws ParseError on anything else.
Rational parse_rational(std::string_view text);

// The exact binary value of a finite double.
Rational exact_rational(double x);

// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& q);

// Shortest round-tripping decimal form.
std::string format_double(double x);

inline std::string format_scalar(double x) { return format_double(x); }
inline std::string format_scalar(const Rational& x) { return format_rational(x); }

}  // namespace hsig
