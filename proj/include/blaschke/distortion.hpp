#pragma once

#include "blaschke/maps.hpp"

namespace blaschke {

// tau_{phi,alpha}(z) together with the Julia-Caratheodory quotient at z.
struct DistortionSample {
  DiskPoint z;
  double alpha;
  double tau;          // (1-|z|^2)^alpha |phi'(z)| / (1-|phi(z)|^2)^alpha
  double jc_quotient;  // (1-|phi(z)|) / (1-|z|)
};

// Local alpha-hyperbolic distortion. Assembled in log space once either
// one-minus base drops below 10^(-300/alpha); the result is always finite
// or a typed OverflowNearSingularity, never a non-finite double.
DistortionSample tau_alpha(const SelfMap& map, const DiskPoint& z, double alpha);

// (1 - |phi(z)|) / (1 - |z|) with both one-minus terms in stable form.
double jc_quotient(const SelfMap& map, const DiskPoint& z);

// (1 - |phi(0)|) / (1 + |phi(0)|), the Schwarz-lemma lower bound for
// (1 - |phi(z)|^2) / (1 - |z|^2) over the whole disk.
double schwarz_lemma_floor(const SelfMap& map);

}  // namespace blaschke
