#pragma once

#include <complex>

#include "blaschke/errors.hpp"

namespace blaschke {

using Complex = std::complex<double>;

// 1 - re^2 - im^2 with error-free products (fma residuals) and a compensated
// sum. The naive 1 - (re*re + im*im) loses most of its digits once |z| is
// close to 1; this form keeps the relative error at a few ulps down to
// 1 - |z| ~ 1e-15.
double one_minus_norm_residual(double re, double im) noexcept;

// Same quantity for a raw complex value, clamped to stay strictly positive.
// Values produced by map evaluation may round exactly onto the unit circle;
// downstream ratios and logarithms require a positive base.
double one_minus_mod_sq_clamped(const Complex& w) noexcept;

// A point of the open unit disk. Construction rejects |z| >= 1 and
// non-finite coordinates; nothing else (near-boundary points are the whole
// purpose, stability lives in the evaluation paths, not in clipping).
class DiskPoint {
 public:
  static DiskPoint from(double re, double im);
  static DiskPoint from(const Complex& z);

  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  const Complex& value() const noexcept { return z_; }

 private:
  explicit DiskPoint(const Complex& z) : z_(z) {}
  Complex z_;
};

// 1 - |z|^2, strictly positive, cancellation-safe.
double one_minus_mod_sq(const DiskPoint& z) noexcept;

// 1 - |z|, computed as (1 - |z|^2) / (1 + |z|).
double one_minus_mod(const DiskPoint& z) noexcept;

// lambda_alpha(z) = (1 - |z|^2)^(-alpha). alpha = 1 is the classical
// hyperbolic density.
double hyperbolic_density(const DiskPoint& z, double alpha);

// A point of the unit circle, stored by angle so its modulus is 1 exactly.
class BoundaryPoint {
 public:
  explicit BoundaryPoint(double angle_radians);

  double angle() const noexcept { return angle_; }
  Complex unit() const noexcept { return std::polar(1.0, angle_); }

 private:
  double angle_;  // normalized into [0, 2*pi)
};

// Non-tangential approach region with vertex zeta and aperture gamma > 1:
//   { z in D : |zeta - z| <= gamma * (1 - |z|^2) }.
class StolzRegion {
 public:
  StolzRegion(const BoundaryPoint& vertex, double aperture);

  const BoundaryPoint& vertex() const noexcept { return vertex_; }
  double aperture() const noexcept { return aperture_; }

  bool contains(const DiskPoint& z) const noexcept;

 private:
  BoundaryPoint vertex_;
  double aperture_;
};

inline bool stolz_contains(const StolzRegion& region, const DiskPoint& z) noexcept {
  return region.contains(z);
}

}  // namespace blaschke
