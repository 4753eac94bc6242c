#pragma once

#include "blaschke/disk_geom.hpp"

namespace blaschke {

// Forward-mode dual number over the complex field: carries f(z) together
// with f'(z) through arithmetic. Serves as the independent cross-check of
// the closed-form derivatives used by evaluate(); keep it free of any
// derivative formulas beyond the local product/quotient rules.
struct CDual {
  Complex value;
  Complex deriv;

  static CDual variable(const Complex& z) { return {z, Complex(1.0, 0.0)}; }
  static CDual constant(const Complex& c) { return {c, Complex(0.0, 0.0)}; }
};

inline CDual operator+(const CDual& a, const CDual& b) {
  return {a.value + b.value, a.deriv + b.deriv};
}

inline CDual operator-(const CDual& a, const CDual& b) {
  return {a.value - b.value, a.deriv - b.deriv};
}

inline CDual operator-(const CDual& a) { return {-a.value, -a.deriv}; }

inline CDual operator*(const CDual& a, const CDual& b) {
  return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
}

inline CDual operator/(const CDual& a, const CDual& b) {
  const Complex q = a.value / b.value;
  return {q, (a.deriv - q * b.deriv) / b.value};
}

inline CDual operator+(const Complex& c, const CDual& a) { return CDual::constant(c) + a; }
inline CDual operator+(const CDual& a, const Complex& c) { return a + CDual::constant(c); }
inline CDual operator-(const Complex& c, const CDual& a) { return CDual::constant(c) - a; }
inline CDual operator-(const CDual& a, const Complex& c) { return a - CDual::constant(c); }
inline CDual operator*(const Complex& c, const CDual& a) { return CDual::constant(c) * a; }
inline CDual operator*(const CDual& a, const Complex& c) { return a * CDual::constant(c); }
inline CDual operator/(const CDual& a, const Complex& c) { return a / CDual::constant(c); }

inline CDual exp(const CDual& a) {
  const Complex e = std::exp(a.value);
  return {e, e * a.deriv};
}

}  // namespace blaschke
