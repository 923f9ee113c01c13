#include "foliage/rational.hpp"

#include "foliage/errors.hpp"

#include <cctype>

namespace foliage {

std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t start = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) start = 1;
  if (start == text.size()) throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(Errc::ParseError, "bad rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return BigInt(digits);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = trim(text);
  const auto slash = whole.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(whole, whole));
  const BigInt num = parse_integer(trim(whole.substr(0, slash)), whole);
  const BigInt den = parse_integer(trim(whole.substr(slash + 1)), whole);
  if (den == 0) throw Error(Errc::ParseError, "zero denominator in '" + std::string(whole) + "'");
  return Rational(num, den);
}

int p_adic_valuation(const BigInt& x, std::int64_t p) {
  BigInt y = abs(x);
  int v = 0;
  while (y != 0 && y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

int p_adic_valuation(const Rational& x, std::int64_t p) {
  return p_adic_valuation(numerator(x), p) - p_adic_valuation(denominator(x), p);
}

BigInt ceil(const Rational& q) {
  const BigInt num = numerator(q);
  const BigInt den = denominator(q);
  BigInt quot = num / den;  // truncates toward zero
  if (quot * den < num) quot += 1;
  return quot;
}

}  // namespace foliage
