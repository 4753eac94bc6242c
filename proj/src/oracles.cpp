#include "blaschke/oracles.hpp"

#include <cmath>
#include <variant>

namespace blaschke::oracle {

namespace {

void validate(const OracleConfig& config) {
  if (config.precision_digits < 30) {
    throw_error(ErrorKind::InvalidArgument, "oracle precision must be >= 30 digits");
  }
  if (!(config.fd_step > 0.0) || !(config.fd_step < 1e-3)) {
    throw_error(ErrorKind::InvalidArgument, "finite-difference step must lie in (0, 1e-3)");
  }
}

int working_scale(const OracleConfig& config) { return config.precision_digits + 20; }

struct EPValue {
  ComplexDecimal value;
  ComplexDecimal derivative;
};

ComplexDecimal ep_one(int scale) {
  return {Decimal::one(scale), Decimal::zero(scale)};
}

ComplexDecimal ep_factor(const ComplexDecimal& a, const ComplexDecimal& z, int scale) {
  const Decimal zero = Decimal::zero(scale);
  if (a.re.is_zero() && a.im.is_zero()) return z;
  const ComplexDecimal one = ep_one(scale);
  (void)zero;
  return (a - z) / (one - a.conj() * z);
}

ComplexDecimal ep_factor_derivative(const ComplexDecimal& a, const ComplexDecimal& z, int scale) {
  const ComplexDecimal one = ep_one(scale);
  if (a.re.is_zero() && a.im.is_zero()) return one;
  const ComplexDecimal den = one - a.conj() * z;
  const Decimal norm_minus_one = a.norm_sq() - Decimal::one(scale);
  return ComplexDecimal{norm_minus_one, Decimal::zero(scale)} / (den * den);
}

void require_zero_rotation(double rotation) {
  if (rotation != 0.0) {
    throw_error(ErrorKind::UnsupportedVariant,
                "the extended-precision oracle supports a nonzero rotation only on the "
                "outermost map, where it cannot change any modulus");
  }
}

// outermost: rotations multiply value and derivative by a unimodular
// constant, so they are dropped where only moduli matter.
EPValue ep_evaluate(const SelfMap& map, const ComplexDecimal& z, int scale, bool outermost) {
  const ComplexDecimal one = ep_one(scale);
  if (std::holds_alternative<Identity>(map.node())) {
    return {z, one};
  }
  if (const auto* fb = std::get_if<FiniteBlaschke>(&map.node())) {
    if (!outermost) require_zero_rotation(fb->rotation);
    ComplexDecimal v = one;
    ComplexDecimal d{Decimal::zero(scale), Decimal::zero(scale)};
    for (const BlaschkeZero& zero : fb->zeros) {
      const ComplexDecimal a =
          ComplexDecimal::from_doubles(zero.zero.re(), zero.zero.im(), scale);
      for (int k = 0; k < zero.multiplicity; ++k) {
        const ComplexDecimal f = ep_factor(a, z, scale);
        const ComplexDecimal fp = ep_factor_derivative(a, z, scale);
        d = d * f + v * fp;
        v = v * f;
      }
    }
    return {v, d};
  }
  if (const auto* au = std::get_if<Automorphism>(&map.node())) {
    if (!outermost) require_zero_rotation(au->rotation);
    const ComplexDecimal a = ComplexDecimal::from_doubles(au->a.re(), au->a.im(), scale);
    return {ep_factor(a, z, scale), ep_factor_derivative(a, z, scale)};
  }
  if (const auto* af = std::get_if<AffineContraction>(&map.node())) {
    const ComplexDecimal scale_c =
        ComplexDecimal::from_doubles(af->scale.real(), af->scale.imag(), scale);
    const ComplexDecimal offset_c =
        ComplexDecimal::from_doubles(af->offset.real(), af->offset.imag(), scale);
    return {scale_c * z + offset_c, scale_c};
  }
  if (const auto* co = std::get_if<Composition>(&map.node())) {
    const EPValue inner = ep_evaluate(*co->inner, z, scale, false);
    const EPValue outer = ep_evaluate(*co->outer, inner.value, scale, outermost);
    return {outer.value, outer.derivative * inner.derivative};
  }
  throw_error(ErrorKind::UnsupportedVariant,
              "the extended-precision oracle covers atomic singular maps only through "
              "interval bounds on the exponent");
}

Decimal rational_power(const Decimal& base, int num, int den) {
  return base.pow_int(num).nth_root(den);
}

}  // namespace

double blaschke_boundary_derivative(const std::vector<BlaschkeZero>& zeros,
                                    const BoundaryPoint& zeta) {
  const Complex unit = zeta.unit();
  double sum = 0.0;
  for (const BlaschkeZero& zero : zeros) {
    const double num = one_minus_norm_residual(zero.zero.re(), zero.zero.im());
    sum += zero.multiplicity * num / std::norm(unit - zero.zero.value());
  }
  return sum;
}

Complex finite_difference_derivative(const SelfMap& map, const DiskPoint& z, double step) {
  if (!(step > 0.0) || !(step < 1e-3)) {
    throw_error(ErrorKind::InvalidArgument, "finite-difference step must lie in (0, 1e-3)");
  }
  if (one_minus_mod(z) < 2.0 * step) {
    throw_error(ErrorKind::StepTooLargeNearBoundary,
                "point is closer than two steps to the unit circle");
  }
  const Complex c = z.value();
  const Complex h(step, 0.0);
  const Complex ih(0.0, step);
  const Complex f_pr = detail::evaluate_raw(map, c + h).value;
  const Complex f_mr = detail::evaluate_raw(map, c - h).value;
  const Complex f_pi = detail::evaluate_raw(map, c + ih).value;
  const Complex f_mi = detail::evaluate_raw(map, c - ih).value;

  const Complex d_re = (f_pr - f_mr) / (2.0 * step);
  const Complex d_im = (f_pi - f_mi) / (Complex(0.0, 2.0 * step));

  // The two stencils differ by phi''' h^2 / 3; the second difference gives
  // the local curvature scale for the tolerance.
  const double curvature = std::abs(f_pr - 2.0 * detail::evaluate_raw(map, c).value + f_mr) /
                           (step * step);
  const double tolerance = 10.0 * step * step * std::max(1.0, curvature);
  if (std::abs(d_re - d_im) > tolerance) {
    throw_error(ErrorKind::InvalidArgument,
                "directional difference quotients disagree beyond the analyticity tolerance");
  }
  return 0.5 * (d_re + d_im);
}

std::string extended_precision_one_minus_mod_sq(std::string_view z_re, std::string_view z_im,
                                                const OracleConfig& config) {
  validate(config);
  const int scale = working_scale(config);
  const ComplexDecimal z = ComplexDecimal::from_strings(z_re, z_im, scale);
  return (Decimal::one(scale) - z.norm_sq()).to_string(20);
}

std::string extended_precision_map_one_minus_mod_sq(const SelfMap& map, std::string_view z_re,
                                                    std::string_view z_im,
                                                    const OracleConfig& config) {
  validate(config);
  const int scale = working_scale(config);
  const ComplexDecimal z = ComplexDecimal::from_strings(z_re, z_im, scale);
  const EPValue v = ep_evaluate(map, z, scale, true);
  return (Decimal::one(scale) - v.value.norm_sq()).to_string(20);
}

std::string extended_precision_tau(const SelfMap& map, std::string_view z_re,
                                   std::string_view z_im, int alpha_num, int alpha_den,
                                   const OracleConfig& config) {
  validate(config);
  if (alpha_num < 1 || alpha_den < 1) {
    throw_error(ErrorKind::InvalidArgument, "alpha must be a positive rational");
  }
  const int scale = working_scale(config);
  const ComplexDecimal z = ComplexDecimal::from_strings(z_re, z_im, scale);
  const Decimal one = Decimal::one(scale);

  const Decimal num_base = one - z.norm_sq();
  if (!(Decimal::zero(scale) < num_base)) {
    throw_error(ErrorKind::InvalidArgument, "oracle point must lie inside the open unit disk");
  }
  const EPValue v = ep_evaluate(map, z, scale, true);
  const Decimal den_base = one - v.value.norm_sq();
  const Decimal deriv_mod = v.derivative.modulus();

  // tau = ((N/M)^p)^{1/q} * |phi'|
  const Decimal ratio = num_base / den_base;
  const Decimal tau = rational_power(ratio, alpha_num, alpha_den) * deriv_mod;
  return tau.to_string(20);
}

namespace {

struct DecimalInterval {
  Decimal lo;
  Decimal hi;
};

// e^{-x} for x >= 0: truncated alternating series at y = x / 2^k with
// y <= 1/64, then k interval squarings. Ten ulps of slop on each end cover
// the fixed-point truncations inside the series evaluation.
DecimalInterval exp_neg_interval(const Decimal& x, int scale) {
  if (x.negative()) throw_error(ErrorKind::InvalidArgument, "exp_neg_interval needs x >= 0");
  const Decimal one = Decimal::one(scale);
  if (x.is_zero()) return {one, one};

  int k = 0;
  Decimal y = x;
  const Decimal threshold = one.div_small(64);
  while (threshold < y) {
    y = y.div_small(2);
    ++k;
    if (k > 64) throw_error(ErrorKind::InvalidArgument, "exponent too large for the interval oracle");
  }
  const Decimal y_lo = y;                 // truncated downward by div_small
  const Decimal y_hi = y.plus_ulps(k);    // each halving lost at most one ulp

  // 1 - y + y^2/2 - y^3/6 <= e^{-y} <= same + y^4/24, evaluated with the
  // matching end of the y enclosure.
  auto series_low = [&](const Decimal& t) {
    return one - t + (t * t).div_small(2) - (t * t * t).div_small(6);
  };
  auto series_high = [&](const Decimal& t) {
    return series_low(t) + (t * t * t * t).div_small(24).plus_ulps(4);
  };
  Decimal lo = series_low(y_hi).plus_ulps(-10);
  Decimal hi = series_high(y_lo).plus_ulps(10);
  if (lo.negative()) lo = Decimal::zero(scale);

  for (int i = 0; i < k; ++i) {
    lo = lo * lo;                 // truncation rounds down
    hi = hi.mul_rounded_up(hi);
  }
  return {lo, hi};
}

Decimal sqrt_lower(const Decimal& a, int scale) {
  Decimal s = a.sqrt();
  while (a < s * s) s = s.plus_ulps(-1);
  (void)scale;
  return s;
}

Decimal sqrt_upper(const Decimal& a, int scale) {
  Decimal s = a.sqrt();
  while (s * s < a) s = s.plus_ulps(1);
  (void)scale;
  return s;
}

Decimal root_lower(const Decimal& a, int n, int /*scale*/) {
  Decimal r = a.nth_root(n);
  while (a < r.pow_int(n)) r = r.plus_ulps(-1);
  return r;
}

Decimal root_upper(const Decimal& a, int n, int /*scale*/) {
  Decimal r = a.nth_root(n);
  while (r.pow_int(n) < a) r = r.plus_ulps(1);
  return r;
}

}  // namespace

std::pair<std::string, std::string> atomic_tau_interval(const SelfMap& map, double z_re,
                                                        double z_im, int alpha_num, int alpha_den,
                                                        const OracleConfig& config) {
  validate(config);
  if (alpha_num < 1 || alpha_den < 1) {
    throw_error(ErrorKind::InvalidArgument, "alpha must be a positive rational");
  }
  const auto* as = std::get_if<AtomicSingular>(&map.node());
  if (as == nullptr) {
    throw_error(ErrorKind::UnsupportedVariant, "interval oracle covers AtomicSingular maps only");
  }
  for (const SingularAtom& atom : as->atoms) {
    if (atom.location.angle() != 0.0) {
      throw_error(ErrorKind::UnsupportedVariant,
                  "interval oracle supports atoms at angle 0 only (the unit point with exact "
                  "rational coordinates)");
    }
  }

  const int scale = working_scale(config);
  const Decimal one = Decimal::one(scale);
  const ComplexDecimal z = ComplexDecimal::from_doubles(z_re, z_im, scale);
  const ComplexDecimal zeta = ep_one(scale);

  const Decimal num_base = one - z.norm_sq();
  if (!(Decimal::zero(scale) < num_base)) {
    throw_error(ErrorKind::InvalidArgument, "oracle point must lie inside the open unit disk");
  }

  // Re w = sum mass (1 - |z|^2) / |1 - z|^2 and w' = sum 2 mass / (1 - z)^2.
  const ComplexDecimal diff = zeta - z;
  const Decimal diff_norm = diff.norm_sq();
  Decimal re_w_lo = Decimal::zero(scale);
  Decimal re_w_hi = Decimal::zero(scale);
  ComplexDecimal w_deriv{Decimal::zero(scale), Decimal::zero(scale)};
  const ComplexDecimal diff_sq = diff * diff;
  for (const SingularAtom& atom : as->atoms) {
    const Decimal mass = Decimal::from_double(atom.mass, scale);
    const Decimal term_lo = (mass * num_base) / diff_norm;
    re_w_lo = re_w_lo + term_lo;
    re_w_hi = re_w_hi + (mass.mul_rounded_up(num_base)).div_rounded_up(diff_norm);
    w_deriv = w_deriv + ComplexDecimal{mass.times_small(2), Decimal::zero(scale)} / diff_sq;
  }

  // |S| = e^{-Re w}; |S'| = |w'| e^{-Re w}; 1 - |S|^2 = 1 - (e^{-Re w})^2.
  const DecimalInterval e_at_hi = exp_neg_interval(re_w_hi, scale);
  const DecimalInterval e_at_lo = exp_neg_interval(re_w_lo, scale);
  const Decimal s_mod_lo = e_at_hi.lo;
  const Decimal s_mod_hi = e_at_lo.hi;

  Decimal den_lo = one - s_mod_hi.mul_rounded_up(s_mod_hi);
  const Decimal den_hi = one - (s_mod_lo * s_mod_lo);
  if (den_lo.negative() || den_lo.is_zero()) den_lo = Decimal::ulp(scale);

  const Decimal w_deriv_norm = w_deriv.norm_sq();
  const Decimal w_mod_lo = sqrt_lower(w_deriv_norm, scale);
  const Decimal w_mod_hi = sqrt_upper(w_deriv_norm, scale).plus_ulps(2);

  const Decimal deriv_lo = w_mod_lo * s_mod_lo;
  const Decimal deriv_hi = w_mod_hi.mul_rounded_up(s_mod_hi);

  // tau = ((N/M)^p)^{1/q} |S'|
  const Decimal ratio_lo = num_base / den_hi;
  const Decimal ratio_hi = num_base.div_rounded_up(den_lo);
  const Decimal pow_lo = ratio_lo.pow_int(alpha_num);
  Decimal pow_hi = ratio_hi.pow_int(alpha_num).plus_ulps(4);

  const Decimal tau_lo = root_lower(pow_lo, alpha_den, scale) * deriv_lo;
  const Decimal tau_hi = root_upper(pow_hi, alpha_den, scale).mul_rounded_up(deriv_hi).plus_ulps(4);

  return {tau_lo.to_string(20), tau_hi.to_string(20)};
}

}  // namespace blaschke::oracle
