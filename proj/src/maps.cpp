#include "blaschke/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace blaschke {

namespace {

constexpr double kAtomProximityGuard = 1e-14;
constexpr int kSelfMapCheckPoints = 1000;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double halton(std::uint64_t index, std::uint32_t base) {
  double result = 0.0;
  double f = 1.0;
  while (index > 0) {
    f /= base;
    result += f * static_cast<double>(index % base);
    index /= base;
  }
  return result;
}

Complex factor_value(const Complex& a, const Complex& z) {
  if (a == Complex(0.0, 0.0)) return z;
  return (a - z) / (1.0 - std::conj(a) * z);
}

Complex factor_derivative(const Complex& a, const Complex& z) {
  if (a == Complex(0.0, 0.0)) return Complex(1.0, 0.0);
  const Complex den = 1.0 - std::conj(a) * z;
  return (std::norm(a) - 1.0) / (den * den);
}

CDual factor_dual(const Complex& a, const CDual& z) {
  if (a == Complex(0.0, 0.0)) return z;
  return (a - z) / (Complex(1.0, 0.0) - std::conj(a) * z);
}

[[noreturn]] void throw_atom_overflow(const BoundaryPoint& atom, const Complex& z) {
  std::ostringstream msg;
  msg << "evaluation point (" << z.real() << ", " << z.imag()
      << ") is within 1e-14 of the singular atom at angle " << atom.angle();
  throw_error(ErrorKind::OverflowNearSingularity, msg.str());
}

}  // namespace

namespace detail {

RawValue evaluate_raw(const SelfMap& map, const Complex& z) {
  return std::visit(
      Overloaded{
          [&](const Identity&) -> RawValue {
            return {z, Complex(1.0, 0.0)};
          },
          [&](const FiniteBlaschke& fb) -> RawValue {
            Complex v = std::polar(1.0, fb.rotation);
            Complex d(0.0, 0.0);
            for (const BlaschkeZero& zero : fb.zeros) {
              const Complex a = zero.zero.value();
              for (int k = 0; k < zero.multiplicity; ++k) {
                const Complex f = factor_value(a, z);
                const Complex fp = factor_derivative(a, z);
                d = d * f + v * fp;
                v = v * f;
              }
            }
            return {v, d};
          },
          [&](const Automorphism& au) -> RawValue {
            const Complex rot = std::polar(1.0, au.rotation);
            const Complex a = au.a.value();
            const Complex den = 1.0 - std::conj(a) * z;
            return {rot * (a - z) / den, rot * (std::norm(a) - 1.0) / (den * den)};
          },
          [&](const AtomicSingular& as) -> RawValue {
            Complex w(0.0, 0.0);
            Complex wp(0.0, 0.0);
            for (const SingularAtom& atom : as.atoms) {
              const Complex zeta = atom.location.unit();
              const Complex diff = zeta - z;
              if (std::abs(diff) < kAtomProximityGuard) throw_atom_overflow(atom.location, z);
              w += atom.mass * (zeta + z) / diff;
              wp += atom.mass * 2.0 * zeta / (diff * diff);
            }
            const Complex s = std::exp(-w);
            return {s, -wp * s};
          },
          [&](const AffineContraction& af) -> RawValue {
            return {af.scale * z + af.offset, af.scale};
          },
          [&](const Composition& co) -> RawValue {
            const RawValue inner = evaluate_raw(*co.inner, z);
            const RawValue outer = evaluate_raw(*co.outer, inner.value);
            return {outer.value, outer.derivative * inner.derivative};
          },
      },
      map.node());
}

double stable_one_minus_mod_sq_raw(const SelfMap& map, const Complex& z) {
  return std::visit(
      Overloaded{
          [&](const Identity&) { return one_minus_mod_sq_clamped(z); },
          [&](const FiniteBlaschke& fb) {
            // 1 - |b_a(z)|^2 = (1 - |a|^2)(1 - |z|^2) / |1 - conj(a) z|^2 per
            // factor; the product modulus is accumulated as a sum of log1p
            // terms and inverted with expm1.
            const double omms_z = one_minus_mod_sq_clamped(z);
            double log_mod_sq = 0.0;
            for (const BlaschkeZero& zero : fb.zeros) {
              const Complex a = zero.zero.value();
              const double num = one_minus_norm_residual(zero.zero.re(), zero.zero.im());
              const double den = std::norm(1.0 - std::conj(a) * z);
              double u = num * omms_z / den;
              if (u > 1.0) u = 1.0;
              log_mod_sq += zero.multiplicity * std::log1p(-u);
            }
            return std::max(-std::expm1(log_mod_sq), std::numeric_limits<double>::min());
          },
          [&](const Automorphism& au) {
            const Complex a = au.a.value();
            const double num = one_minus_norm_residual(au.a.re(), au.a.im());
            const double den = std::norm(1.0 - std::conj(a) * z);
            double u = num * one_minus_mod_sq_clamped(z) / den;
            if (u > 1.0) u = 1.0;
            return std::max(u, std::numeric_limits<double>::min());
          },
          [&](const AtomicSingular& as) {
            // Re((zeta + z)/(zeta - z)) = (1 - |z|^2) / |zeta - z|^2, so
            // |phi(z)|^2 = exp(-2 sum mass * that) and the one-minus form is
            // a single expm1.
            const double omms_z = one_minus_mod_sq_clamped(z);
            double re_w = 0.0;
            for (const SingularAtom& atom : as.atoms) {
              const Complex diff = atom.location.unit() - z;
              if (std::abs(diff) < kAtomProximityGuard) throw_atom_overflow(atom.location, z);
              re_w += atom.mass * omms_z / std::norm(diff);
            }
            return std::max(-std::expm1(-2.0 * re_w), std::numeric_limits<double>::min());
          },
          [&](const AffineContraction& af) {
            return one_minus_mod_sq_clamped(af.scale * z + af.offset);
          },
          [&](const Composition& co) {
            const RawValue inner = evaluate_raw(*co.inner, z);
            return stable_one_minus_mod_sq_raw(*co.outer, inner.value);
          },
      },
      map.node());
}

}  // namespace detail

SelfMap SelfMap::identity() { return SelfMap(Node(Identity{})); }

SelfMap SelfMap::finite_blaschke(std::vector<BlaschkeZero> zeros, double rotation) {
  if (zeros.empty()) {
    throw_error(ErrorKind::InvalidArgument,
                "a finite Blaschke product needs at least one zero; a bare "
                "rotation is a constant-free automorphism, not a product");
  }
  for (const BlaschkeZero& zero : zeros) {
    if (zero.multiplicity < 1) {
      throw_error(ErrorKind::InvalidArgument, "zero multiplicity must be a positive integer");
    }
  }
  if (!std::isfinite(rotation)) {
    throw_error(ErrorKind::InvalidArgument, "rotation must be finite");
  }
  return SelfMap(Node(FiniteBlaschke{std::move(zeros), rotation}));
}

SelfMap SelfMap::automorphism(const DiskPoint& a, double rotation) {
  if (!std::isfinite(rotation)) {
    throw_error(ErrorKind::InvalidArgument, "rotation must be finite");
  }
  return SelfMap(Node(Automorphism{a, rotation}));
}

SelfMap SelfMap::atomic_singular(std::vector<SingularAtom> atoms) {
  if (atoms.empty()) {
    throw_error(ErrorKind::InvalidArgument,
                "an atomic singular inner function needs at least one atom");
  }
  for (const SingularAtom& atom : atoms) {
    if (!(atom.mass > 0.0) || !std::isfinite(atom.mass)) {
      throw_error(ErrorKind::InvalidArgument, "atom masses must be positive and finite");
    }
  }
  return SelfMap(Node(AtomicSingular{std::move(atoms)}));
}

SelfMap SelfMap::affine_contraction(const Complex& scale, const Complex& offset) {
  if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag()) ||
      !std::isfinite(offset.real()) || !std::isfinite(offset.imag())) {
    throw_error(ErrorKind::InvalidArgument, "affine coefficients must be finite");
  }
  if (!(std::abs(scale) > 0.0)) {
    throw_error(ErrorKind::InvalidArgument, "affine contraction must be non-constant: |scale| > 0");
  }
  if (std::abs(scale) + std::abs(offset) > 1.0) {
    throw_error(ErrorKind::InvalidArgument,
                "affine contraction requires |scale| + |offset| <= 1");
  }
  return SelfMap(Node(AffineContraction{scale, offset}));
}

SelfMap SelfMap::composition(SelfMap outer, SelfMap inner, std::uint64_t check_seed) {
  Composition node{std::make_shared<const SelfMap>(std::move(outer)),
                   std::make_shared<const SelfMap>(std::move(inner))};
  SelfMap map{Node(std::move(node))};
  for (int i = 0; i < kSelfMapCheckPoints; ++i) {
    const Complex z = quasi_random_disk_point(static_cast<std::uint64_t>(i), check_seed);
    const detail::RawValue rv = detail::evaluate_raw(map, z);
    if (!(std::norm(rv.value) < 1.0)) {
      std::ostringstream msg;
      msg << "composition failed the self-map check at sampled point (" << z.real() << ", "
          << z.imag() << ")";
      throw_error(ErrorKind::InvalidArgument, msg.str());
    }
  }
  return map;
}

MapValue evaluate(const SelfMap& map, const DiskPoint& z) {
  const detail::RawValue rv = detail::evaluate_raw(map, z.value());
  return {rv.value, rv.derivative, detail::stable_one_minus_mod_sq_raw(map, z.value())};
}

double stable_one_minus_mod_sq(const SelfMap& map, const DiskPoint& z) {
  return detail::stable_one_minus_mod_sq_raw(map, z.value());
}

double naive_one_minus_mod_sq(const SelfMap& map, const DiskPoint& z) {
  return 1.0 - std::norm(detail::evaluate_raw(map, z.value()).value);
}

namespace {

void collect_singular_support(const SelfMap& map, std::vector<BoundaryPoint>& out) {
  std::visit(Overloaded{
                 [&](const AtomicSingular& as) {
                   for (const SingularAtom& atom : as.atoms) {
                     const bool seen =
                         std::any_of(out.begin(), out.end(), [&](const BoundaryPoint& p) {
                           return p.angle() == atom.location.angle();
                         });
                     if (!seen) out.push_back(atom.location);
                   }
                 },
                 [&](const Composition& co) {
                   collect_singular_support(*co.outer, out);
                   collect_singular_support(*co.inner, out);
                 },
                 [](const auto&) {},
             },
             map.node());
}

}  // namespace

std::vector<BoundaryPoint> declared_singular_support(const SelfMap& map) {
  std::vector<BoundaryPoint> out;
  collect_singular_support(map, out);
  return out;
}

CDual evaluate_dual(const SelfMap& map, const Complex& z) {
  const CDual zd = CDual::variable(z);
  return std::visit(
      Overloaded{
          [&](const Identity&) { return zd; },
          [&](const FiniteBlaschke& fb) {
            CDual v = CDual::constant(std::polar(1.0, fb.rotation));
            for (const BlaschkeZero& zero : fb.zeros) {
              const Complex a = zero.zero.value();
              for (int k = 0; k < zero.multiplicity; ++k) v = v * factor_dual(a, zd);
            }
            return v;
          },
          [&](const Automorphism& au) {
            const Complex a = au.a.value();
            return std::polar(1.0, au.rotation) * factor_dual(a, zd);
          },
          [&](const AtomicSingular& as) {
            CDual w = CDual::constant(Complex(0.0, 0.0));
            for (const SingularAtom& atom : as.atoms) {
              const Complex zeta = atom.location.unit();
              if (std::abs(zeta - z) < kAtomProximityGuard) throw_atom_overflow(atom.location, z);
              w = w + atom.mass * ((zeta + zd) / (zeta - zd));
            }
            return exp(-w);
          },
          [&](const AffineContraction& af) { return af.scale * zd + CDual::constant(af.offset); },
          [&](const Composition& co) {
            const CDual inner = evaluate_dual(*co.inner, z);
            const CDual outer = evaluate_dual(*co.outer, inner.value);
            return CDual{outer.value, outer.deriv * inner.deriv};
          },
      },
      map.node());
}

SelfMap truncated_blaschke_product(int zero_count) {
  if (zero_count < 1) {
    throw_error(ErrorKind::InvalidArgument, "truncation needs at least one zero");
  }
  std::vector<BlaschkeZero> zeros;
  zeros.reserve(static_cast<std::size_t>(zero_count));
  for (int k = 1; k <= zero_count; ++k) {
    zeros.push_back({DiskPoint::from(1.0 - std::ldexp(1.0, -k), 0.0), 1});
  }
  return SelfMap::finite_blaschke(std::move(zeros));
}

Complex quasi_random_disk_point(std::uint64_t index, std::uint64_t seed) {
  const double shift_u =
      static_cast<double>(splitmix64(seed) >> 11) * 0x1.0p-53;
  const double shift_v =
      static_cast<double>(splitmix64(seed + 0x517cc1b727220a95ULL) >> 11) * 0x1.0p-53;
  double u = halton(index + 1, 2) + shift_u;
  double v = halton(index + 1, 3) + shift_v;
  u -= std::floor(u);
  v -= std::floor(v);
  // Keep the radius off the circle so inner maps cannot round onto it.
  u = std::min(u, 1.0 - 0x1.0p-26);
  const double r = std::sqrt(u);
  return std::polar(r, 2.0 * 3.14159265358979323846 * v);
}

}  // namespace blaschke
