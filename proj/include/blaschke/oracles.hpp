#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "blaschke/decimal.hpp"
#include "blaschke/maps.hpp"

namespace blaschke::oracle {

struct OracleConfig {
  int precision_digits = 50;  // >= 30
  double fd_step = 1e-6;      // in (0, 1e-3)
};

// |B'(zeta)| for a finite Blaschke product on the unit circle:
//   sum_k m_k (1 - |a_k|^2) / |zeta - a_k|^2.
// Standard identity, independent of the limit estimators it validates.
double blaschke_boundary_derivative(const std::vector<BlaschkeZero>& zeros,
                                    const BoundaryPoint& zeta);

// Four-point central difference: real- and imaginary-direction two-point
// stencils whose mean cancels the h^2 term. The two directions must agree
// (Cauchy-Riemann); disagreement beyond 10 step^2 times the local curvature
// scale is an error.
Complex finite_difference_derivative(const SelfMap& map, const DiskPoint& z, double step);

// tau_{phi,alpha}(z) for alpha = alpha_num / alpha_den at exact decimal
// coordinates, evaluated in fixed-point decimal with precision_digits guard
// digits and reported correctly rounded to 20 significant digits.
//
// Supported variants: FiniteBlaschke, Automorphism, AffineContraction,
// Identity and compositions thereof. Rotations of the outermost map are
// modulus-invariant and ignored; a rotation on a composed inner map must be
// exactly 0 (its value feeds the outer map). AtomicSingular is rejected
// with UnsupportedVariant; interval bounds cover it separately.
std::string extended_precision_tau(const SelfMap& map, std::string_view z_re,
                                   std::string_view z_im, int alpha_num, int alpha_den,
                                   const OracleConfig& config = {});

// 1 - (re^2 + im^2) at exact decimal coordinates.
std::string extended_precision_one_minus_mod_sq(std::string_view z_re, std::string_view z_im,
                                                const OracleConfig& config = {});

// 1 - |phi(z)|^2 by direct extended-precision subtraction (the oracle route
// deliberately avoids the library's stable identities).
std::string extended_precision_map_one_minus_mod_sq(const SelfMap& map, std::string_view z_re,
                                                    std::string_view z_im,
                                                    const OracleConfig& config = {});

// Certified enclosure of tau_{phi,alpha}(z) for an AtomicSingular map whose
// atoms all sit at angle 0 (the one unit point with exact rational
// coordinates). The exponential is bounded by scaling-and-squaring interval
// arithmetic; no transcendental is evaluated. z is taken as the exact
// rational point given by the doubles.
std::pair<std::string, std::string> atomic_tau_interval(const SelfMap& map, double z_re,
                                                        double z_im, int alpha_num, int alpha_den,
                                                        const OracleConfig& config = {});

}  // namespace blaschke::oracle
