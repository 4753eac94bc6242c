#include "blaschke/distortion.hpp"

#include <cmath>
#include <limits>

namespace blaschke {

namespace {

double assemble_tau(double num_base, double den_base, double deriv_mod, double alpha) {
  const double log_space_threshold = std::pow(10.0, -300.0 / alpha);
  double tau;
  if (num_base < log_space_threshold || den_base < log_space_threshold) {
    if (deriv_mod == 0.0) return 0.0;
    const double log_tau =
        alpha * (std::log(num_base) - std::log(den_base)) + std::log(deriv_mod);
    tau = std::exp(log_tau);
  } else {
    tau = std::pow(num_base, alpha) * deriv_mod / std::pow(den_base, alpha);
  }
  if (!std::isfinite(tau)) {
    throw_error(ErrorKind::OverflowNearSingularity,
                "tau exceeds the double range at this point");
  }
  return tau;
}

double jc_from(const MapValue& mv, const DiskPoint& z) {
  const double one_minus_phi = mv.one_minus_mod_sq_value / (1.0 + std::abs(mv.value));
  return one_minus_phi / one_minus_mod(z);
}

}  // namespace

DistortionSample tau_alpha(const SelfMap& map, const DiskPoint& z, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw_error(ErrorKind::InvalidArgument, "tau requires alpha > 0");
  }
  const MapValue mv = evaluate(map, z);
  const double num_base = one_minus_mod_sq(z);
  const double tau = assemble_tau(num_base, mv.one_minus_mod_sq_value,
                                  std::abs(mv.derivative), alpha);
  return {z, alpha, tau, jc_from(mv, z)};
}

double jc_quotient(const SelfMap& map, const DiskPoint& z) {
  return jc_from(evaluate(map, z), z);
}

double schwarz_lemma_floor(const SelfMap& map) {
  const DiskPoint origin = DiskPoint::from(0.0, 0.0);
  const MapValue mv = evaluate(map, origin);
  const double mod = std::abs(mv.value);
  // 1 - |phi(0)| from the stable one-minus form.
  const double one_minus = mv.one_minus_mod_sq_value / (1.0 + mod);
  return one_minus / (1.0 + mod);
}

}  // namespace blaschke
