#include "hsig/scalar.hpp"

#include <cctype>
#include <cstdio>

#include "hsig/error.hpp"

namespace hsig {

ValidationError::ValidationError(std::vector<Diagnostic> diags)
    : Error([&] {
        std::string msg = "invalid filtration tree";
        for (const auto& d : diags) msg += "\n  " + d.where + ": " + d.message;
        return msg;
      }()),
      diags_(std::move(diags)) {}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw ParseError("malformed rational '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("malformed rational '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  BigInt num = parse_integer(trim(s.substr(0, slash)), text);
  std::string_view den_text = trim(s.substr(slash + 1));
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  BigInt den = parse_integer(den_text, text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw ParseError("non-finite number");
  int exp = 0;
  double m = std::frexp(x, &exp);
  // m * 2^53 is an integer for every finite double.
  auto mant = static_cast<long long>(std::ldexp(m, 53));
  exp -= 53;
  Rational q{BigInt(mant)};
  if (exp > 0) {
    q *= Rational(BigInt(1) << exp);
  } else if (exp < 0) {
    q /= Rational(BigInt(1) << -exp);
  }
  return q;
}

std::string format_rational(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

}  // namespace hsig
