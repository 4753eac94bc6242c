#pragma once

#include <functional>
#include <vector>

#include "blaschke/maps.hpp"

namespace blaschke {

// One ray toward a boundary point inside a Stolz region: points
//   z_n = zeta (1 - t_n) e^{i offset kappa t_n},   t_n = t0 2^{-n},
// so 1 - |z_n| halves from shell to shell. offset = 0 is the radial ray.
struct ApproachPath {
  BoundaryPoint target;
  double aperture;
  double offset;  // tangential displacement parameter in (-1, 1)
  std::vector<DiskPoint> points;
};

// rays paths toward target, ray 0 radial, the rest with offsets symmetric
// about 0. The common tilt kappa is maximal (up to bisection tolerance)
// such that every generated point passes the Stolz containment test.
std::vector<ApproachPath> make_paths(const BoundaryPoint& target, double gamma, int rays,
                                     int depth, double t0);

enum class LimitKind {
  Finite,        // per-path extrapolations agree
  Unbounded,     // tail exceeds 1e12, sustains >= 1.5x growth, or overflows
  Undetermined,  // finite but the per-path extrapolations disagree
};

struct LimitEstimate {
  LimitKind kind = LimitKind::Undetermined;
  double value = 0.0;  // meaningful only when kind == Finite
  double lower_envelope = 0.0;
  double upper_envelope = 0.0;
  double extrapolated = 0.0;
  double convergence_order_estimate = 0.0;
  int samples_used = 0;

  bool is_finite() const noexcept { return kind == LimitKind::Finite; }
  bool is_unbounded() const noexcept { return kind == LimitKind::Unbounded; }
};

using PointFunction = std::function<double(const DiskPoint&)>;

// Angular limit: per path, Richardson-extrapolates the last `tail` values
// with the convergence order fitted from successive differences (shell decay
// ratio 2). The estimates are combined into a value when their spread stays
// within 1e-4 * (1 + |mean|). f may throw OverflowNearSingularity; that
// marks the path unbounded.
LimitEstimate estimate_angular_limit(const PointFunction& f,
                                     const std::vector<ApproachPath>& paths, int tail = 8);

// Angular liminf: minimum over paths of the per-path extrapolations.
// Paths that blow up are treated as +infinity (they fail boundedness, not
// the liminf); the estimate is unbounded only if every path blows up.
LimitEstimate estimate_angular_liminf(const PointFunction& f,
                                      const std::vector<ApproachPath>& paths, int tail = 8);

enum class DerivativeMethod { RadialExtrapolation, MultiRayMin };

struct AngularDerivativeEstimate {
  bool infinite = false;
  double modulus = 0.0;  // meaningful when !infinite; > 0
  DerivativeMethod method = DerivativeMethod::MultiRayMin;
  double residual = 0.0;  // spread of the per-path extrapolations
};

// |phi'(zeta)| via the angular liminf of the Julia-Caratheodory quotient
// over make_paths(target, gamma, rays, depth, 1/2).
AngularDerivativeEstimate estimate_angular_derivative(const SelfMap& map,
                                                      const BoundaryPoint& target, double gamma,
                                                      int rays = 3, int depth = 40);

namespace detail {

struct PathFit {
  bool unbounded = false;
  double tail_min = 0.0;
  double tail_max = 0.0;
  double extrapolated = 0.0;
  double order = 0.0;
  int samples = 0;
};

// Richardson fit of a tail of values sampled on shells with decay ratio 2.
PathFit fit_tail(const std::vector<double>& values);

// Evaluates f on the last `tail` points of each path and fits each tail.
std::vector<PathFit> fit_paths(const PointFunction& f, const std::vector<ApproachPath>& paths,
                               int tail);

LimitEstimate combine_limit(const std::vector<PathFit>& fits);
LimitEstimate combine_liminf(const std::vector<PathFit>& fits);

}  // namespace detail

}  // namespace blaschke
