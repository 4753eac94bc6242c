#pragma once

#include <optional>
#include <vector>

#include "blaschke/boundary.hpp"
#include "blaschke/distortion.hpp"

namespace blaschke {

// Finite stand-in for "almost every boundary point": count equispaced
// midpoint angles 2*pi*(j + 1/2)/count minus exclusion balls around the
// declared singular support. Midpoint placement keeps samples off atoms and
// fixed points at every count.
struct BoundarySampling {
  int requested_count = 0;
  double exclusion_radius = 1e-3;  // radians
  std::vector<BoundaryPoint> excluded;
  std::vector<BoundaryPoint> points;

  static BoundarySampling equispaced(int count, const std::vector<BoundaryPoint>& excluded,
                                     double exclusion_radius = 1e-3);
  static BoundarySampling from_points(std::vector<BoundaryPoint> points);
};

struct ShellSup {
  double radius;
  double sup_tau;
};

enum class BoundednessKind { Bounded, Unbounded, Inconclusive };

struct BoundednessReport {
  std::vector<ShellSup> shell_sups;  // radii 1 - 2^{-m}, strictly increasing
  BoundednessKind kind = BoundednessKind::Inconclusive;
  double sup_estimate = 0.0;   // meaningful when Bounded
  double growth_rate = 0.0;    // geometric mean of the last ratios when Unbounded
  bool overflow_forced = false;  // a shell overflowed; verdict forced Unbounded
};

// Sup of tau over circles of radius 1 - 2^{-m}, m = 1..shells, each grid
// maximum sharpened by two local 4x refinements around the maximizing
// angle. Unbounded when the last 5 sups each grow by >= 1.2x, Bounded when
// they agree within 5% of their max, Inconclusive otherwise.
BoundednessReport boundedness_scan(const SelfMap& map, double alpha, int shells,
                                   int angular_resolution);

struct PointLiminf {
  BoundaryPoint point;
  LimitEstimate estimate;
};

struct LiminfScanResult {
  double c_estimate = 0.0;  // min over points with a finite liminf, clamped at 0
  std::vector<PointLiminf> per_point;
  int unbounded_points = 0;
};

// Angular liminf of tau_alpha at every sampled boundary point. Points whose
// tau blows up are recorded but do not lower the liminf constant; they fail
// the boundedness hypothesis instead.
LiminfScanResult liminf_scan(const SelfMap& map, double alpha, const BoundarySampling& sampling,
                             double gamma, int rays = 3, int depth = 40);

enum class VerdictKind {
  FiniteBlaschkeConsistent,
  RejectedLiminfFails,
  RejectedTauUnbounded,
  Inconclusive,
};

struct ClassifierConfig {
  double gamma = 2.0;
  int boundary_points = 64;
  int shells = 30;
  int angular_resolution = 16384;
  int depth = 40;
  int rays = 3;
  double c_min = 1e-3;
  double exclusion_radius = 1e-3;
  std::uint64_t seed = 0;
};

// Verdict at finite resolution: "consistent", never "proven". The full
// evidence (shell sups, per-point liminf estimates, the sampling size M)
// rides along so refinement studies can audit it.
struct ClassificationVerdict {
  double alpha = 0.0;
  double c_estimate = 0.0;
  VerdictKind verdict = VerdictKind::Inconclusive;
  std::optional<double> derived_bound;  // 2 (1/c)^{1/(alpha-1)}, alpha > 1 only
  BoundednessReport boundedness;
  std::vector<PointLiminf> per_point;
  int unbounded_points = 0;
  ClassifierConfig config;
};

// Boundedness scan plus liminf scan, folded per the two-sided criterion:
// FiniteBlaschkeConsistent iff bounded and c_estimate >= c_min. alpha must
// stay away from 1 (AlphaExcluded within 1e-9).
ClassificationVerdict classify(const SelfMap& map, double alpha,
                               const ClassifierConfig& config = {});

// True iff every estimated |phi'(zeta)| over the sampling is within the
// bound 2 (1/c)^{1/(alpha-1)} (relative tolerance on top). An infinite
// estimate fails the check.
bool check_angular_derivative_bound(const SelfMap& map, double alpha, double c,
                                    const BoundarySampling& sampling, double gamma = 2.0,
                                    double rel_tolerance = 1e-3);

// Unrestricted |z| -> 1 limit of tau_{phi,1} through per-shell extrema.
// The envelopes report the deepest shell's min and max; the value is the
// common extrapolation of the min and max sequences when they agree.
LimitEstimate heins_scan(const SelfMap& map, int shells, int angular_resolution);

struct ArcPointReport {
  BoundaryPoint point;
  LimitEstimate liminf;
  LimitEstimate limit;
  bool condition_a = false;  // liminf tau_1 > threshold
  bool condition_b = false;  // |limit tau_1 - 1| <= 1e-4
  bool consistent = false;   // a <=> b at this point
};

// Per-point check of the two equivalent arc conditions (positive liminf of
// tau_1 vs limit 1) on an open subarc.
std::vector<ArcPointReport> arc_scan(const SelfMap& map, double start_angle, double end_angle,
                                     double gamma, int points, double liminf_threshold = 1e-3,
                                     int depth = 40);

struct KrausRow {
  BoundaryPoint point;
  LimitEstimate limit;
  AngularDerivativeEstimate derivative;
};

struct KrausScanResult {
  double fraction = 0.0;  // share of points with angular limit of tau_1 within 1e-4 of 1
  std::vector<KrausRow> rows;
};

KrausScanResult kraus_scan(const SelfMap& map, const BoundarySampling& sampling, double gamma,
                           int depth = 40);

namespace detail {

struct ShellExtrema {
  double radius;
  double min_tau;
  double max_tau;
};

ShellExtrema shell_extrema_tau1(const SelfMap& map, int shell_index, int angular_resolution);

}  // namespace detail

}  // namespace blaschke
