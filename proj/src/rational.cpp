#include "prccsl/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>

#include "prccsl/error.hpp"

namespace prccsl {

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ValidationError("zero denominator");
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse_decimal(std::string_view text) {
  const std::string shown(text);
  if (text.empty()) throw ValidationError("empty decimal literal");
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_point = false;
  bool seen_digit = false;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max() / 10;
  for (char c : text) {
    if (c == '.') {
      if (seen_point) throw ValidationError("malformed decimal '" + shown + "'");
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ValidationError("malformed decimal '" + shown + "'");
    }
    if (num > kMax || (seen_point && den > kMax)) {
      throw ValidationError("decimal '" + shown + "' has too many digits");
    }
    seen_digit = true;
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (seen_point) den *= 10;
  }
  if (!seen_digit) throw ValidationError("malformed decimal '" + shown + "'");
  return Rational(num, den);
}

std::string Rational::to_decimal() const {
  std::uint64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return to_fraction();
  const int digits = std::max(twos, fives);
  // Scale to num' / 10^digits.
  unsigned __int128 scaled = num_;
  for (int i = twos; i < digits; ++i) scaled *= 2;
  for (int i = fives; i < digits; ++i) scaled *= 5;
  unsigned __int128 pow10 = 1;
  for (int i = 0; i < digits; ++i) pow10 *= 10;

  auto u128_to_string = [](unsigned __int128 v) {
    if (v == 0) return std::string("0");
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  };
  std::string out = u128_to_string(scaled / pow10);
  if (digits > 0) {
    std::string frac = u128_to_string(scaled % pow10);
    frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
    out += "." + frac;
  }
  return out;
}

bool ratio_at_least(std::uint64_t m, std::uint64_t k, const Rational& p) noexcept {
  const auto lhs = static_cast<unsigned __int128>(m) * p.den();
  const auto rhs = static_cast<unsigned __int128>(p.num()) * k;
  return lhs >= rhs;
}

}  // namespace prccsl
