#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace prccsl {

/// Non-negative exact fraction, always stored reduced.
class Rational {
 public:
  Rational() = default;
  /// Throws ValidationError if den == 0.
  Rational(std::uint64_t num, std::uint64_t den);

  /// Parses a decimal literal such as "0.95", "1", "1.0" or ".5".
  /// Throws ValidationError on anything else.
  static Rational parse_decimal(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Exact decimal rendering; the denominator must divide a power of ten.
  /// Falls back to "num/den" otherwise.
  std::string to_decimal() const;
  std::string to_fraction() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

/// m / k >= p, evaluated as m * den(p) >= num(p) * k without rounding.
bool ratio_at_least(std::uint64_t m, std::uint64_t k, const Rational& p) noexcept;

}  // namespace prccsl
