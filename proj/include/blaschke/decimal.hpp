#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace blaschke::oracle {

// Integer-scaled fixed-point decimal arithmetic: a value is
// sign * digits * 10^{-scale}. Everything stays in integer limbs, so this
// oracle path shares no floating-point machinery with the double-precision
// code it validates. Multiplication and division truncate toward zero at
// the working scale; directed-rounding callers bump ulps explicitly.
class Decimal {
 public:
  Decimal() : sign_(0), scale_(0) {}

  static Decimal zero(int scale);
  static Decimal one(int scale);
  static Decimal from_int(std::int64_t value, int scale);
  static Decimal from_string(std::string_view text, int scale);
  // Exact binary expansion of the double, truncated below 10^{-scale}.
  static Decimal from_double(double value, int scale);
  static Decimal ulp(int scale);

  int scale() const noexcept { return scale_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  bool negative() const noexcept { return sign_ < 0; }

  Decimal operator+(const Decimal& o) const;
  Decimal operator-(const Decimal& o) const;
  Decimal operator*(const Decimal& o) const;
  Decimal operator/(const Decimal& o) const;
  Decimal operator-() const;

  Decimal abs() const;
  Decimal times_small(std::uint32_t factor) const;
  Decimal div_small(std::uint32_t divisor) const;
  // Value shifted by 10^k (k < 0 truncates).
  Decimal shifted(int k) const;
  Decimal plus_ulps(std::int64_t n) const;

  // Magnitude rounded away from zero whenever truncation lost digits.
  Decimal mul_rounded_up(const Decimal& o) const;
  Decimal div_rounded_up(const Decimal& o) const;

  int compare(const Decimal& o) const;
  bool operator<(const Decimal& o) const { return compare(o) < 0; }
  bool operator<=(const Decimal& o) const { return compare(o) <= 0; }
  bool operator>(const Decimal& o) const { return compare(o) > 0; }
  bool operator>=(const Decimal& o) const { return compare(o) >= 0; }
  bool operator==(const Decimal& o) const { return compare(o) == 0; }

  Decimal pow_int(int exponent) const;  // exponent >= 0
  Decimal sqrt() const;                 // value >= 0
  Decimal nth_root(int n) const;        // value >= 0, n >= 1

  // floor(log10(|value|)); value must be nonzero.
  int decimal_exponent() const;

  // Rounded (half-even) to the given number of significant digits.
  std::string to_string(int significant_digits) const;
  std::string to_full_string() const;
  double to_double() const;

 private:
  using Mag = std::vector<std::uint32_t>;  // base 1e9, little-endian

  Decimal(int sign, int scale, Mag mag);
  void normalize();

  int sign_;
  int scale_;
  Mag mag_;
};

struct ComplexDecimal {
  Decimal re;
  Decimal im;

  static ComplexDecimal from_doubles(double re, double im, int scale);
  static ComplexDecimal from_strings(std::string_view re, std::string_view im, int scale);

  ComplexDecimal operator+(const ComplexDecimal& o) const;
  ComplexDecimal operator-(const ComplexDecimal& o) const;
  ComplexDecimal operator*(const ComplexDecimal& o) const;
  ComplexDecimal operator/(const ComplexDecimal& o) const;
  ComplexDecimal operator-() const;
  ComplexDecimal conj() const;

  Decimal norm_sq() const;
  Decimal modulus() const;
};

}  // namespace blaschke::oracle
