#include "blaschke/disk_geom.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace blaschke {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace

double one_minus_norm_residual(double re, double im) noexcept {
  // Exact squares: p + e == re*re without rounding.
  const double p1 = re * re;
  const double e1 = std::fma(re, re, -p1);
  const double p2 = im * im;
  const double e2 = std::fma(im, im, -p2);

  // Neumaier-compensated sum of {1, -p1, -p2, -e1, -e2}.
  double sum = 1.0;
  double comp = 0.0;
  const double terms[4] = {-p1, -p2, -e1, -e2};
  for (double x : terms) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  return sum + comp;
}

double one_minus_mod_sq_clamped(const Complex& w) noexcept {
  const double r = one_minus_norm_residual(w.real(), w.imag());
  return std::max(r, std::numeric_limits<double>::min());
}

DiskPoint DiskPoint::from(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw_error(ErrorKind::InvalidArgument, "disk point coordinates must be finite");
  }
  if (!(one_minus_norm_residual(re, im) > 0.0)) {
    std::ostringstream msg;
    msg << "point (" << re << ", " << im << ") is not inside the open unit disk";
    throw_error(ErrorKind::InvalidArgument, msg.str());
  }
  return DiskPoint(Complex(re, im));
}

DiskPoint DiskPoint::from(const Complex& z) { return from(z.real(), z.imag()); }

double one_minus_mod_sq(const DiskPoint& z) noexcept {
  return one_minus_norm_residual(z.re(), z.im());
}

double one_minus_mod(const DiskPoint& z) noexcept {
  return one_minus_mod_sq(z) / (1.0 + std::abs(z.value()));
}

double hyperbolic_density(const DiskPoint& z, double alpha) {
  if (!(alpha > 0.0)) {
    throw_error(ErrorKind::InvalidArgument, "hyperbolic density requires alpha > 0");
  }
  return std::pow(one_minus_mod_sq(z), -alpha);
}

BoundaryPoint::BoundaryPoint(double angle_radians) {
  if (!std::isfinite(angle_radians)) {
    throw_error(ErrorKind::InvalidArgument, "boundary angle must be finite");
  }
  double a = std::fmod(angle_radians, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;  // fmod / wrap rounding can land exactly on 2*pi
  angle_ = a;
}

StolzRegion::StolzRegion(const BoundaryPoint& vertex, double aperture)
    : vertex_(vertex), aperture_(aperture) {
  if (!(aperture > 1.0)) {
    throw_error(ErrorKind::InvalidArgument, "Stolz aperture must exceed 1");
  }
}

bool StolzRegion::contains(const DiskPoint& z) const noexcept {
  return std::abs(vertex_.unit() - z.value()) <= aperture_ * one_minus_mod_sq(z);
}

}  // namespace blaschke
