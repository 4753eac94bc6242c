#include "blaschke/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blaschke/parallel.hpp"

namespace blaschke {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kShellGrowthFactor = 1.2;
constexpr int kVerdictShells = 5;
constexpr double kShellAgreementBand = 0.05;
constexpr double kLimitOneTolerance = 1e-4;

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  if (d > kTwoPi / 2.0) d = kTwoPi - d;
  return d;
}

// sup (or inf) of tau_{phi,alpha} on the circle of the given radius: a full
// midpoint grid pass followed by two 4x refinements around the best angle.
struct CircleScan {
  double best_tau;
  double best_angle;
};

template <typename Better>
CircleScan scan_circle(const SelfMap& map, double alpha, double radius, int resolution,
                       Better better) {
  auto tau_at = [&](double angle) {
    return tau_alpha(map, DiskPoint::from(std::polar(radius, angle)), alpha).tau;
  };

  CircleScan scan{tau_at(kTwoPi * 0.5 / resolution), kTwoPi * 0.5 / resolution};
  for (int j = 1; j < resolution; ++j) {
    const double angle = kTwoPi * (j + 0.5) / resolution;
    const double t = tau_at(angle);
    if (better(t, scan.best_tau)) scan = {t, angle};
  }

  double spacing = kTwoPi / resolution;
  for (int pass = 0; pass < 2; ++pass) {
    const double center = scan.best_angle;
    for (int j = -4; j <= 4; ++j) {
      if (j == 0) continue;
      const double angle = center + j * (spacing / 4.0);
      const double t = tau_at(angle);
      if (better(t, scan.best_tau)) scan = {t, angle};
    }
    spacing /= 4.0;
  }
  return scan;
}

std::vector<double> last_ratios(const std::vector<ShellSup>& sups, int count) {
  std::vector<double> ratios;
  const int n = static_cast<int>(sups.size());
  for (int i = n - count; i < n; ++i) {
    const double prev = sups[static_cast<std::size_t>(i - 1)].sup_tau;
    const double next = sups[static_cast<std::size_t>(i)].sup_tau;
    ratios.push_back(prev > 0.0 ? next / prev : 0.0);
  }
  return ratios;
}

}  // namespace

BoundarySampling BoundarySampling::equispaced(int count,
                                              const std::vector<BoundaryPoint>& excluded,
                                              double exclusion_radius) {
  if (count < 1) throw_error(ErrorKind::InvalidArgument, "sampling count must be >= 1");
  if (!(exclusion_radius >= 0.0)) {
    throw_error(ErrorKind::InvalidArgument, "exclusion radius must be nonnegative");
  }
  BoundarySampling sampling;
  sampling.requested_count = count;
  sampling.exclusion_radius = exclusion_radius;
  sampling.excluded = excluded;
  for (int j = 0; j < count; ++j) {
    const double angle = kTwoPi * (j + 0.5) / count;
    const bool near_excluded =
        std::any_of(excluded.begin(), excluded.end(), [&](const BoundaryPoint& p) {
          return circular_distance(angle, p.angle()) <= exclusion_radius;
        });
    if (!near_excluded) sampling.points.emplace_back(angle);
  }
  if (sampling.points.empty()) {
    throw_error(ErrorKind::InvalidArgument, "every sampled point fell in an exclusion ball");
  }
  return sampling;
}

BoundarySampling BoundarySampling::from_points(std::vector<BoundaryPoint> points) {
  if (points.empty()) throw_error(ErrorKind::InvalidArgument, "sampling must be non-empty");
  BoundarySampling sampling;
  sampling.requested_count = static_cast<int>(points.size());
  sampling.points = std::move(points);
  return sampling;
}

BoundednessReport boundedness_scan(const SelfMap& map, double alpha, int shells,
                                   int angular_resolution) {
  if (shells < 8) throw_error(ErrorKind::InvalidArgument, "boundedness scan needs shells >= 8");
  if (angular_resolution < 8) {
    throw_error(ErrorKind::InvalidArgument, "angular resolution must be >= 8");
  }

  BoundednessReport report;
  report.shell_sups.resize(static_cast<std::size_t>(shells));
  std::vector<char> overflowed(static_cast<std::size_t>(shells), 0);

  parallel_for(shells, [&](int i) {
    const int m = i + 1;
    const double radius = 1.0 - std::ldexp(1.0, -m);
    try {
      const CircleScan scan = scan_circle(map, alpha, radius, angular_resolution,
                                          [](double a, double b) { return a > b; });
      report.shell_sups[static_cast<std::size_t>(i)] = {radius, scan.best_tau};
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OverflowNearSingularity) throw;
      overflowed[static_cast<std::size_t>(i)] = 1;
      report.shell_sups[static_cast<std::size_t>(i)] = {radius, 0.0};
    }
  });

  if (std::any_of(overflowed.begin(), overflowed.end(), [](char c) { return c != 0; })) {
    report.kind = BoundednessKind::Unbounded;
    report.overflow_forced = true;
    return report;
  }

  const std::vector<double> ratios = last_ratios(report.shell_sups, kVerdictShells);
  const bool growing = std::all_of(ratios.begin(), ratios.end(),
                                   [](double r) { return r >= kShellGrowthFactor; });

  double tail_max = 0.0;
  double tail_min = std::numeric_limits<double>::infinity();
  for (int i = shells - kVerdictShells; i < shells; ++i) {
    tail_max = std::max(tail_max, report.shell_sups[static_cast<std::size_t>(i)].sup_tau);
    tail_min = std::min(tail_min, report.shell_sups[static_cast<std::size_t>(i)].sup_tau);
  }

  if (growing) {
    report.kind = BoundednessKind::Unbounded;
    double product = 1.0;
    for (double r : ratios) product *= r;
    report.growth_rate = std::pow(product, 1.0 / static_cast<double>(ratios.size()));
  } else if (tail_max - tail_min <= kShellAgreementBand * tail_max) {
    report.kind = BoundednessKind::Bounded;
    for (const ShellSup& s : report.shell_sups) {
      report.sup_estimate = std::max(report.sup_estimate, s.sup_tau);
    }
  } else {
    report.kind = BoundednessKind::Inconclusive;
  }
  return report;
}

LiminfScanResult liminf_scan(const SelfMap& map, double alpha, const BoundarySampling& sampling,
                             double gamma, int rays, int depth) {
  if (std::abs(alpha - 1.0) < 1e-9) {
    throw_error(ErrorKind::AlphaExcluded,
                "alpha = 1 is excluded: the angular-limit condition at alpha = 1 captures a "
                "strictly larger class (inner functions with finite angular derivatives a.e.), "
                "so it cannot single out finite Blaschke products");
  }

  LiminfScanResult result;
  const int n = static_cast<int>(sampling.points.size());
  result.per_point.resize(static_cast<std::size_t>(n));

  parallel_for(n, [&](int i) {
    const BoundaryPoint& zeta = sampling.points[static_cast<std::size_t>(i)];
    const auto paths = make_paths(zeta, gamma, rays, depth, 0.5);
    const LimitEstimate est = estimate_angular_liminf(
        [&](const DiskPoint& z) { return tau_alpha(map, z, alpha).tau; }, paths);
    result.per_point[static_cast<std::size_t>(i)] = {zeta, est};
  });

  double c = std::numeric_limits<double>::infinity();
  bool any_finite = false;
  for (const PointLiminf& p : result.per_point) {
    if (p.estimate.is_unbounded()) {
      ++result.unbounded_points;
      continue;
    }
    any_finite = true;
    c = std::min(c, p.estimate.value);
  }
  result.c_estimate = any_finite ? std::max(c, 0.0) : 0.0;
  return result;
}

ClassificationVerdict classify(const SelfMap& map, double alpha, const ClassifierConfig& config) {
  if (std::abs(alpha - 1.0) < 1e-9) {
    throw_error(ErrorKind::AlphaExcluded,
                "alpha = 1 is excluded: the angular-limit condition at alpha = 1 captures a "
                "strictly larger class (inner functions with finite angular derivatives a.e.), "
                "so it cannot single out finite Blaschke products");
  }
  if (!(alpha > 0.0)) throw_error(ErrorKind::InvalidArgument, "alpha must be positive");

  ClassificationVerdict verdict;
  verdict.alpha = alpha;
  verdict.config = config;

  verdict.boundedness = boundedness_scan(map, alpha, config.shells, config.angular_resolution);

  const BoundarySampling sampling = BoundarySampling::equispaced(
      config.boundary_points, declared_singular_support(map), config.exclusion_radius);
  LiminfScanResult liminf =
      liminf_scan(map, alpha, sampling, config.gamma, config.rays, config.depth);
  verdict.c_estimate = liminf.c_estimate;
  verdict.per_point = std::move(liminf.per_point);
  verdict.unbounded_points = liminf.unbounded_points;

  switch (verdict.boundedness.kind) {
    case BoundednessKind::Unbounded:
      verdict.verdict = VerdictKind::RejectedTauUnbounded;
      break;
    case BoundednessKind::Bounded:
      if (verdict.c_estimate >= config.c_min) {
        verdict.verdict = VerdictKind::FiniteBlaschkeConsistent;
        if (alpha > 1.0) {
          verdict.derived_bound = 2.0 * std::pow(1.0 / verdict.c_estimate, 1.0 / (alpha - 1.0));
        }
      } else {
        verdict.verdict = VerdictKind::RejectedLiminfFails;
      }
      break;
    case BoundednessKind::Inconclusive:
      verdict.verdict = VerdictKind::Inconclusive;
      break;
  }
  return verdict;
}

bool check_angular_derivative_bound(const SelfMap& map, double alpha, double c,
                                    const BoundarySampling& sampling, double gamma,
                                    double rel_tolerance) {
  if (!(alpha > 1.0)) {
    throw_error(ErrorKind::InvalidArgument, "the derivative bound applies for alpha > 1 only");
  }
  if (!(c > 0.0)) throw_error(ErrorKind::InvalidArgument, "c must be positive");

  const double bound = 2.0 * std::pow(1.0 / c, 1.0 / (alpha - 1.0));
  const int n = static_cast<int>(sampling.points.size());
  std::vector<char> ok(static_cast<std::size_t>(n), 0);
  parallel_for(n, [&](int i) {
    const AngularDerivativeEstimate est =
        estimate_angular_derivative(map, sampling.points[static_cast<std::size_t>(i)], gamma);
    ok[static_cast<std::size_t>(i)] =
        (!est.infinite && est.modulus <= bound * (1.0 + rel_tolerance)) ? 1 : 0;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c_) { return c_ != 0; });
}

namespace detail {

ShellExtrema shell_extrema_tau1(const SelfMap& map, int shell_index, int angular_resolution) {
  const double radius = 1.0 - std::ldexp(1.0, -shell_index);
  const CircleScan max_scan = scan_circle(map, 1.0, radius, angular_resolution,
                                          [](double a, double b) { return a > b; });
  const CircleScan min_scan = scan_circle(map, 1.0, radius, angular_resolution,
                                          [](double a, double b) { return a < b; });
  return {radius, min_scan.best_tau, max_scan.best_tau};
}

}  // namespace detail

LimitEstimate heins_scan(const SelfMap& map, int shells, int angular_resolution) {
  if (shells < 8) throw_error(ErrorKind::InvalidArgument, "heins scan needs shells >= 8");

  std::vector<detail::ShellExtrema> extrema(static_cast<std::size_t>(shells));
  parallel_for(shells, [&](int i) {
    extrema[static_cast<std::size_t>(i)] = detail::shell_extrema_tau1(map, i + 1, angular_resolution);
  });

  std::vector<double> mins, maxes;
  mins.reserve(extrema.size());
  maxes.reserve(extrema.size());
  for (const auto& e : extrema) {
    mins.push_back(e.min_tau);
    maxes.push_back(e.max_tau);
  }
  const int tail = std::min<int>(8, shells);
  const detail::PathFit min_fit =
      detail::fit_tail({mins.end() - tail, mins.end()});
  const detail::PathFit max_fit =
      detail::fit_tail({maxes.end() - tail, maxes.end()});

  LimitEstimate est;
  est.samples_used = shells;
  const double mean = 0.5 * (min_fit.extrapolated + max_fit.extrapolated);
  est.extrapolated = mean;
  est.convergence_order_estimate = 0.5 * (min_fit.order + max_fit.order);
  if (!min_fit.unbounded && !max_fit.unbounded &&
      std::abs(max_fit.extrapolated - min_fit.extrapolated) <=
          kLimitOneTolerance * (1.0 + std::abs(mean))) {
    est.kind = LimitKind::Finite;
    est.value = mean;
  } else {
    est.kind = LimitKind::Undetermined;
  }
  est.lower_envelope = std::min(extrema.back().min_tau, est.extrapolated);
  est.upper_envelope = std::max(extrema.back().max_tau, est.extrapolated);
  return est;
}

std::vector<ArcPointReport> arc_scan(const SelfMap& map, double start_angle, double end_angle,
                                     double gamma, int points, double liminf_threshold,
                                     int depth) {
  if (!(end_angle > start_angle) || !(end_angle - start_angle <= kTwoPi)) {
    throw_error(ErrorKind::InvalidArgument, "arc must be nondegenerate");
  }
  if (points < 1) throw_error(ErrorKind::InvalidArgument, "arc scan needs points >= 1");

  std::vector<ArcPointReport> reports(static_cast<std::size_t>(points),
                                      ArcPointReport{BoundaryPoint(0.0), {}, {}, false, false, false});
  parallel_for(points, [&](int i) {
    const double angle = start_angle + (i + 0.5) * (end_angle - start_angle) / points;
    const BoundaryPoint zeta(angle);
    const auto paths = make_paths(zeta, gamma, 3, depth, 0.5);
    const auto fits = detail::fit_paths(
        [&](const DiskPoint& z) { return tau_alpha(map, z, 1.0).tau; }, paths, 8);

    ArcPointReport report{zeta, detail::combine_liminf(fits), detail::combine_limit(fits),
                          false, false, false};
    report.condition_a = report.liminf.is_finite() && report.liminf.value > liminf_threshold;
    report.condition_b =
        report.limit.is_finite() && std::abs(report.limit.value - 1.0) <= kLimitOneTolerance;
    report.consistent = report.condition_a == report.condition_b;
    reports[static_cast<std::size_t>(i)] = report;
  });
  return reports;
}

KrausScanResult kraus_scan(const SelfMap& map, const BoundarySampling& sampling, double gamma,
                           int depth) {
  KrausScanResult result;
  const int n = static_cast<int>(sampling.points.size());
  result.rows.resize(static_cast<std::size_t>(n),
                     KrausRow{BoundaryPoint(0.0), {}, {}});

  parallel_for(n, [&](int i) {
    const BoundaryPoint& zeta = sampling.points[static_cast<std::size_t>(i)];
    const auto paths = make_paths(zeta, gamma, 3, depth, 0.5);
    const LimitEstimate limit = estimate_angular_limit(
        [&](const DiskPoint& z) { return tau_alpha(map, z, 1.0).tau; }, paths);
    result.rows[static_cast<std::size_t>(i)] =
        KrausRow{zeta, limit, estimate_angular_derivative(map, zeta, gamma, 3, depth)};
  });

  int passing = 0;
  for (const KrausRow& row : result.rows) {
    if (row.limit.is_finite() && std::abs(row.limit.value - 1.0) <= kLimitOneTolerance) ++passing;
  }
  result.fraction = n > 0 ? static_cast<double>(passing) / n : 0.0;
  return result;
}

}  // namespace blaschke
