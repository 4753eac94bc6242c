#include "blaschke/decimal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "blaschke/errors.hpp"

namespace blaschke::oracle {

namespace {

using Mag = std::vector<std::uint32_t>;

constexpr std::uint64_t kLimbBase = 1000000000ULL;
constexpr int kLimbDigits = 9;

void trim(Mag& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

bool mag_zero(const Mag& m) { return m.empty(); }

int cmp_mag(const Mag& a, const Mag& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

Mag add_mag(const Mag& a, const Mag& b) {
  Mag out;
  out.reserve(std::max(a.size(), b.size()) + 1);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    std::uint64_t cur = carry;
    if (i < a.size()) cur += a[i];
    if (i < b.size()) cur += b[i];
    out.push_back(static_cast<std::uint32_t>(cur % kLimbBase));
    carry = cur / kLimbBase;
  }
  if (carry != 0) out.push_back(static_cast<std::uint32_t>(carry));
  return out;
}

// Requires a >= b.
Mag sub_mag(const Mag& a, const Mag& b) {
  Mag out;
  out.reserve(a.size());
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(a[i]) - borrow;
    if (i < b.size()) cur -= b[i];
    if (cur < 0) {
      cur += static_cast<std::int64_t>(kLimbBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out.push_back(static_cast<std::uint32_t>(cur));
  }
  trim(out);
  return out;
}

Mag mul_mag(const Mag& a, const Mag& b) {
  if (mag_zero(a) || mag_zero(b)) return {};
  Mag out(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur = out[i + j] +
                          static_cast<std::uint64_t>(a[i]) * static_cast<std::uint64_t>(b[j]) +
                          carry;
      out[i + j] = static_cast<std::uint32_t>(cur % kLimbBase);
      carry = cur / kLimbBase;
    }
    std::size_t k = i + b.size();
    while (carry != 0) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur % kLimbBase);
      carry = cur / kLimbBase;
      ++k;
    }
  }
  trim(out);
  return out;
}

Mag mul_small_mag(const Mag& a, std::uint64_t f) {
  if (mag_zero(a) || f == 0) return {};
  Mag out;
  out.reserve(a.size() + 2);
  std::uint64_t carry = 0;
  for (std::uint32_t limb : a) {
    std::uint64_t cur = static_cast<std::uint64_t>(limb) * f + carry;
    out.push_back(static_cast<std::uint32_t>(cur % kLimbBase));
    carry = cur / kLimbBase;
  }
  while (carry != 0) {
    out.push_back(static_cast<std::uint32_t>(carry % kLimbBase));
    carry /= kLimbBase;
  }
  return out;
}

Mag div_small_mag(const Mag& a, std::uint32_t d, std::uint32_t* remainder) {
  Mag out(a.size(), 0);
  std::uint64_t rem = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const std::uint64_t cur = rem * kLimbBase + a[i];
    out[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  if (remainder != nullptr) *remainder = static_cast<std::uint32_t>(rem);
  trim(out);
  return out;
}

const std::uint32_t kPow10[10] = {1,      10,      100,      1000,      10000,
                                  100000, 1000000, 10000000, 100000000, 1000000000};

Mag mul_pow10_mag(Mag m, int k) {
  if (mag_zero(m) || k == 0) return m;
  const int limbs = k / kLimbDigits;
  const int rest = k % kLimbDigits;
  if (limbs > 0) m.insert(m.begin(), static_cast<std::size_t>(limbs), 0u);
  if (rest > 0) m = mul_small_mag(m, kPow10[rest]);
  return m;
}

Mag div_pow10_mag(Mag m, int k, bool* inexact) {
  bool lost = false;
  const int limbs = k / kLimbDigits;
  const int rest = k % kLimbDigits;
  if (limbs > 0) {
    const std::size_t drop = std::min(m.size(), static_cast<std::size_t>(limbs));
    for (std::size_t i = 0; i < drop; ++i) lost |= m[i] != 0;
    m.erase(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(drop));
    if (drop < static_cast<std::size_t>(limbs)) m.clear();
  }
  if (rest > 0 && !mag_zero(m)) {
    std::uint32_t rem = 0;
    m = div_small_mag(m, kPow10[rest], &rem);
    lost |= rem != 0;
  }
  trim(m);
  if (inexact != nullptr) *inexact = lost;
  return m;
}

// MSB-first digit vector, no leading zeros (empty for zero).
std::vector<std::uint8_t> to_digits(const Mag& m) {
  std::vector<std::uint8_t> digits;
  if (mag_zero(m)) return digits;
  digits.reserve(m.size() * kLimbDigits);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%u", m.back());
  for (const char* p = buf; *p != '\0'; ++p) digits.push_back(static_cast<std::uint8_t>(*p - '0'));
  for (std::size_t i = m.size() - 1; i-- > 0;) {
    std::snprintf(buf, sizeof(buf), "%09u", m[i]);
    for (const char* p = buf; *p != '\0'; ++p) digits.push_back(static_cast<std::uint8_t>(*p - '0'));
  }
  return digits;
}

Mag from_digits(const std::vector<std::uint8_t>& digits) {
  Mag m;
  if (digits.empty()) return m;
  const std::size_t n = digits.size();
  std::size_t pos = n;
  while (pos > 0) {
    const std::size_t take = std::min<std::size_t>(kLimbDigits, pos);
    std::uint32_t limb = 0;
    for (std::size_t i = pos - take; i < pos; ++i) limb = limb * 10 + digits[i];
    m.push_back(limb);
    pos -= take;
  }
  trim(m);
  return m;
}

int cmp_digits(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

// a -= b in place; requires a >= b. MSB-first.
void sub_digits_inplace(std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  int borrow = 0;
  std::size_t ai = a.size();
  std::size_t bi = b.size();
  while (ai > 0) {
    --ai;
    int cur = a[ai] - borrow;
    if (bi > 0) {
      --bi;
      cur -= b[bi];
    } else if (borrow == 0) {
      a[ai] = static_cast<std::uint8_t>(cur);
      break;
    }
    if (cur < 0) {
      cur += 10;
      borrow = 1;
    } else {
      borrow = 0;
    }
    a[ai] = static_cast<std::uint8_t>(cur);
  }
  while (!a.empty() && a.front() == 0) a.erase(a.begin());
}

// Schoolbook long division on digit vectors. Quotient digits MSB-first.
std::vector<std::uint8_t> divide_digits(const std::vector<std::uint8_t>& num,
                                        const std::vector<std::uint8_t>& den, bool* inexact) {
  std::vector<std::uint8_t> quotient;
  std::vector<std::uint8_t> rem;
  quotient.reserve(num.size());
  for (std::uint8_t digit : num) {
    if (!(rem.empty() && digit == 0)) rem.push_back(digit);
    int q = 0;
    while (!rem.empty() && cmp_digits(rem, den) >= 0) {
      sub_digits_inplace(rem, den);
      ++q;
    }
    quotient.push_back(static_cast<std::uint8_t>(q));
  }
  while (!quotient.empty() && quotient.front() == 0) quotient.erase(quotient.begin());
  if (inexact != nullptr) *inexact = !rem.empty();
  return quotient;
}

void require_same_scale(int a, int b) {
  if (a != b) throw_error(ErrorKind::InvalidArgument, "decimal scale mismatch");
}

}  // namespace

Decimal::Decimal(int sign, int scale, Mag mag) : sign_(sign), scale_(scale), mag_(std::move(mag)) {
  normalize();
}

void Decimal::normalize() {
  trim(mag_);
  if (mag_zero(mag_)) sign_ = 0;
}

Decimal Decimal::zero(int scale) { return Decimal(0, scale, {}); }

Decimal Decimal::one(int scale) { return from_int(1, scale); }

Decimal Decimal::ulp(int scale) { return Decimal(1, scale, {1u}); }

Decimal Decimal::from_int(std::int64_t value, int scale) {
  const int sign = value == 0 ? 0 : (value < 0 ? -1 : 1);
  std::uint64_t mag = value < 0 ? -static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
  Mag limbs;
  while (mag != 0) {
    limbs.push_back(static_cast<std::uint32_t>(mag % kLimbBase));
    mag /= kLimbBase;
  }
  return Decimal(sign, scale, mul_pow10_mag(std::move(limbs), scale));
}

Decimal Decimal::from_string(std::string_view text, int scale) {
  std::size_t pos = 0;
  int sign = 1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  std::vector<std::uint8_t> digits;
  int frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.') {
      if (seen_point) throw_error(ErrorKind::ParseError, "decimal literal has two points");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(static_cast<std::uint8_t>(c - '0'));
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw_error(ErrorKind::ParseError, "invalid character in decimal literal");
    }
  }
  int exponent = 0;
  if (pos < text.size()) {
    const std::string tail(text.substr(pos + 1));
    char* end = nullptr;
    const long e = std::strtol(tail.c_str(), &end, 10);
    if (end == tail.c_str() || *end != '\0') {
      throw_error(ErrorKind::ParseError, "invalid exponent in decimal literal");
    }
    exponent = static_cast<int>(e);
  }
  if (!seen_digit) throw_error(ErrorKind::ParseError, "decimal literal has no digits");

  while (!digits.empty() && digits.front() == 0) digits.erase(digits.begin());
  Mag mag = from_digits(digits);
  const int shift = scale - frac_digits + exponent;
  if (shift >= 0) {
    mag = mul_pow10_mag(std::move(mag), shift);
  } else {
    mag = div_pow10_mag(std::move(mag), -shift, nullptr);
  }
  return Decimal(mag_zero(mag) ? 0 : sign, scale, std::move(mag));
}

Decimal Decimal::from_double(double value, int scale) {
  if (!std::isfinite(value)) {
    throw_error(ErrorKind::InvalidArgument, "cannot convert a non-finite double");
  }
  if (value == 0.0) return zero(scale);
  const int sign = value < 0.0 ? -1 : 1;
  int exp2 = 0;
  const double mant_d = std::frexp(std::abs(value), &exp2);
  const auto mant = static_cast<std::int64_t>(std::ldexp(mant_d, 53));
  exp2 -= 53;  // |value| = mant * 2^exp2 exactly

  Mag mag;
  std::uint64_t m = static_cast<std::uint64_t>(mant);
  while (m != 0) {
    mag.push_back(static_cast<std::uint32_t>(m % kLimbBase));
    m /= kLimbBase;
  }
  if (exp2 >= 0) {
    for (int i = 0; i < exp2; ++i) mag = mul_small_mag(mag, 2);
    mag = mul_pow10_mag(std::move(mag), scale);
  } else {
    // mant * 2^{-k} = mant * 5^k * 10^{-k}
    for (int i = 0; i < -exp2; ++i) mag = mul_small_mag(mag, 5);
    const int shift = scale + exp2;
    if (shift >= 0) {
      mag = mul_pow10_mag(std::move(mag), shift);
    } else {
      mag = div_pow10_mag(std::move(mag), -shift, nullptr);
    }
  }
  return Decimal(mag_zero(mag) ? 0 : sign, scale, std::move(mag));
}

Decimal Decimal::operator+(const Decimal& o) const {
  require_same_scale(scale_, o.scale_);
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  if (sign_ == o.sign_) return Decimal(sign_, scale_, add_mag(mag_, o.mag_));
  const int cmp = cmp_mag(mag_, o.mag_);
  if (cmp == 0) return zero(scale_);
  if (cmp > 0) return Decimal(sign_, scale_, sub_mag(mag_, o.mag_));
  return Decimal(o.sign_, scale_, sub_mag(o.mag_, mag_));
}

Decimal Decimal::operator-(const Decimal& o) const { return *this + (-o); }

Decimal Decimal::operator-() const { return Decimal(-sign_, scale_, mag_); }

Decimal Decimal::abs() const { return Decimal(sign_ == 0 ? 0 : 1, scale_, mag_); }

Decimal Decimal::operator*(const Decimal& o) const {
  require_same_scale(scale_, o.scale_);
  Mag product = mul_mag(mag_, o.mag_);
  product = div_pow10_mag(std::move(product), scale_, nullptr);
  return Decimal(sign_ * o.sign_, scale_, std::move(product));
}

Decimal Decimal::mul_rounded_up(const Decimal& o) const {
  require_same_scale(scale_, o.scale_);
  bool inexact = false;
  Mag product = mul_mag(mag_, o.mag_);
  product = div_pow10_mag(std::move(product), scale_, &inexact);
  Decimal result(sign_ * o.sign_, scale_, std::move(product));
  if (inexact && sign_ * o.sign_ != 0) {
    result = result + Decimal(sign_ * o.sign_, scale_, {1u});
  }
  return result;
}

Decimal Decimal::operator/(const Decimal& o) const {
  require_same_scale(scale_, o.scale_);
  if (o.sign_ == 0) throw_error(ErrorKind::InvalidArgument, "decimal division by zero");
  if (sign_ == 0) return zero(scale_);
  const Mag scaled = mul_pow10_mag(mag_, scale_);
  std::vector<std::uint8_t> quotient = divide_digits(to_digits(scaled), to_digits(o.mag_), nullptr);
  return Decimal(sign_ * o.sign_, scale_, from_digits(quotient));
}

Decimal Decimal::div_rounded_up(const Decimal& o) const {
  require_same_scale(scale_, o.scale_);
  if (o.sign_ == 0) throw_error(ErrorKind::InvalidArgument, "decimal division by zero");
  if (sign_ == 0) return zero(scale_);
  const Mag scaled = mul_pow10_mag(mag_, scale_);
  bool inexact = false;
  std::vector<std::uint8_t> quotient =
      divide_digits(to_digits(scaled), to_digits(o.mag_), &inexact);
  Decimal result(sign_ * o.sign_, scale_, from_digits(quotient));
  if (inexact) result = result + Decimal(sign_ * o.sign_, scale_, {1u});
  return result;
}

Decimal Decimal::times_small(std::uint32_t factor) const {
  if (factor == 0 || sign_ == 0) return zero(scale_);
  return Decimal(sign_, scale_, mul_small_mag(mag_, factor));
}

Decimal Decimal::div_small(std::uint32_t divisor) const {
  if (divisor == 0) throw_error(ErrorKind::InvalidArgument, "decimal division by zero");
  if (sign_ == 0) return zero(scale_);
  return Decimal(sign_, scale_, div_small_mag(mag_, divisor, nullptr));
}

Decimal Decimal::shifted(int k) const {
  if (sign_ == 0 || k == 0) return *this;
  if (k > 0) return Decimal(sign_, scale_, mul_pow10_mag(mag_, k));
  Mag mag = div_pow10_mag(mag_, -k, nullptr);
  return Decimal(mag_zero(mag) ? 0 : sign_, scale_, std::move(mag));
}

Decimal Decimal::plus_ulps(std::int64_t n) const {
  if (n == 0) return *this;
  Decimal delta = from_int(n < 0 ? -n : n, 0);
  delta = Decimal(n < 0 ? -1 : 1, scale_, delta.mag_);
  return *this + delta;
}

int Decimal::compare(const Decimal& o) const {
  require_same_scale(scale_, o.scale_);
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  if (sign_ == 0) return 0;
  return sign_ * cmp_mag(mag_, o.mag_);
}

Decimal Decimal::pow_int(int exponent) const {
  if (exponent < 0) throw_error(ErrorKind::InvalidArgument, "pow_int needs exponent >= 0");
  Decimal result = one(scale_);
  Decimal base = *this;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

int Decimal::decimal_exponent() const {
  if (sign_ == 0) throw_error(ErrorKind::InvalidArgument, "zero has no decimal exponent");
  const std::vector<std::uint8_t> digits = to_digits(mag_);
  return static_cast<int>(digits.size()) - 1 - scale_;
}

Decimal Decimal::sqrt() const {
  if (negative()) throw_error(ErrorKind::InvalidArgument, "sqrt of a negative decimal");
  if (is_zero()) return zero(scale_);

  int shift_back = 0;
  Decimal v = *this;
  const int e = decimal_exponent();
  if (e > 250 || e < -250) {
    shift_back = e / 2;
    v = shifted(-2 * shift_back);
  }
  Decimal s = from_double(std::sqrt(v.to_double()), scale_);
  if (s.is_zero()) s = ulp(scale_);
  for (int i = 0; i < 8; ++i) {
    s = (s + v / s).div_small(2);
  }
  return s.shifted(shift_back);
}

Decimal Decimal::nth_root(int n) const {
  if (n < 1) throw_error(ErrorKind::InvalidArgument, "nth_root needs n >= 1");
  if (negative()) throw_error(ErrorKind::InvalidArgument, "nth_root of a negative decimal");
  if (n == 1 || is_zero()) return *this;

  int shift_back = 0;
  Decimal v = *this;
  const int e = decimal_exponent();
  if (e > 250 || e < -250) {
    shift_back = e / n;
    v = shifted(-n * shift_back);
  }
  Decimal y = from_double(std::pow(v.to_double(), 1.0 / n), scale_);
  if (y.is_zero()) y = ulp(scale_);
  const auto n_small = static_cast<std::uint32_t>(n);
  for (int i = 0; i < 10; ++i) {
    y = (y.times_small(n_small - 1) + v / y.pow_int(n - 1)).div_small(n_small);
  }
  return y.shifted(shift_back);
}

std::string Decimal::to_string(int significant_digits) const {
  if (significant_digits < 1) {
    throw_error(ErrorKind::InvalidArgument, "need at least one significant digit");
  }
  if (sign_ == 0) return "0";

  std::vector<std::uint8_t> digits = to_digits(mag_);
  int point_exp = static_cast<int>(digits.size()) - scale_;  // digits before the point

  // Round half-even at the requested significant digit.
  if (static_cast<int>(digits.size()) > significant_digits) {
    const std::uint8_t next = digits[static_cast<std::size_t>(significant_digits)];
    bool tail_nonzero = false;
    for (std::size_t i = static_cast<std::size_t>(significant_digits) + 1; i < digits.size(); ++i) {
      if (digits[i] != 0) {
        tail_nonzero = true;
        break;
      }
    }
    digits.resize(static_cast<std::size_t>(significant_digits));
    bool round_up = next > 5 || (next == 5 && tail_nonzero) ||
                    (next == 5 && !tail_nonzero && digits.back() % 2 == 1);
    if (round_up) {
      int i = significant_digits - 1;
      while (i >= 0) {
        if (digits[static_cast<std::size_t>(i)] == 9) {
          digits[static_cast<std::size_t>(i)] = 0;
          --i;
        } else {
          ++digits[static_cast<std::size_t>(i)];
          break;
        }
      }
      if (i < 0) {
        digits.insert(digits.begin(), 1);
        digits.pop_back();
        ++point_exp;
      }
    }
  } else {
    digits.resize(static_cast<std::size_t>(significant_digits), 0);
  }

  std::string out;
  if (sign_ < 0) out.push_back('-');
  const int msd_exp = point_exp - 1;
  if (msd_exp >= -40 && msd_exp <= 40) {
    if (point_exp <= 0) {
      out += "0.";
      out.append(static_cast<std::size_t>(-point_exp), '0');
      for (std::uint8_t d : digits) out.push_back(static_cast<char>('0' + d));
    } else if (point_exp >= static_cast<int>(digits.size())) {
      for (std::uint8_t d : digits) out.push_back(static_cast<char>('0' + d));
      out.append(static_cast<std::size_t>(point_exp - static_cast<int>(digits.size())), '0');
    } else {
      for (int i = 0; i < point_exp; ++i) out.push_back(static_cast<char>('0' + digits[static_cast<std::size_t>(i)]));
      out.push_back('.');
      for (std::size_t i = static_cast<std::size_t>(point_exp); i < digits.size(); ++i) {
        out.push_back(static_cast<char>('0' + digits[i]));
      }
    }
  } else {
    out.push_back(static_cast<char>('0' + digits[0]));
    out.push_back('.');
    for (std::size_t i = 1; i < digits.size(); ++i) out.push_back(static_cast<char>('0' + digits[i]));
    out.push_back('e');
    out += std::to_string(msd_exp);
  }
  return out;
}

std::string Decimal::to_full_string() const {
  if (sign_ == 0) return "0";
  const std::vector<std::uint8_t> digits = to_digits(mag_);
  return to_string(static_cast<int>(digits.size()));
}

double Decimal::to_double() const {
  if (sign_ == 0) return 0.0;
  return std::strtod(to_string(25).c_str(), nullptr);
}

ComplexDecimal ComplexDecimal::from_doubles(double re, double im, int scale) {
  return {Decimal::from_double(re, scale), Decimal::from_double(im, scale)};
}

ComplexDecimal ComplexDecimal::from_strings(std::string_view re, std::string_view im, int scale) {
  return {Decimal::from_string(re, scale), Decimal::from_string(im, scale)};
}

ComplexDecimal ComplexDecimal::operator+(const ComplexDecimal& o) const {
  return {re + o.re, im + o.im};
}

ComplexDecimal ComplexDecimal::operator-(const ComplexDecimal& o) const {
  return {re - o.re, im - o.im};
}

ComplexDecimal ComplexDecimal::operator*(const ComplexDecimal& o) const {
  return {re * o.re - im * o.im, re * o.im + im * o.re};
}

ComplexDecimal ComplexDecimal::operator/(const ComplexDecimal& o) const {
  const Decimal denom = o.norm_sq();
  const ComplexDecimal num = *this * o.conj();
  return {num.re / denom, num.im / denom};
}

ComplexDecimal ComplexDecimal::operator-() const { return {-re, -im}; }

ComplexDecimal ComplexDecimal::conj() const { return {re, -im}; }

Decimal ComplexDecimal::norm_sq() const { return re * re + im * im; }

Decimal ComplexDecimal::modulus() const { return norm_sq().sqrt(); }

}  // namespace blaschke::oracle
