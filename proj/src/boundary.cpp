#include "blaschke/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blaschke/distortion.hpp"

namespace blaschke {

namespace {

constexpr double kUnboundedThreshold = 1e12;
constexpr double kGrowthFactor = 1.5;
constexpr int kGrowthShells = 5;
constexpr double kSpreadTolerance = 1e-4;
constexpr double kPi = 3.14159265358979323846;

std::vector<double> ray_offsets(int rays) {
  std::vector<double> offsets;
  offsets.reserve(static_cast<std::size_t>(rays));
  offsets.push_back(0.0);
  const int half = rays / 2;
  const double step = 1.0 / (half + 1);
  for (int k = 1; k < rays; ++k) {
    const int magnitude = (k + 1) / 2;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    offsets.push_back(sign * magnitude * step);
  }
  return offsets;
}

std::vector<double> shell_depths(int depth, double t0) {
  std::vector<double> t(static_cast<std::size_t>(depth));
  for (int n = 0; n < depth; ++n) t[static_cast<std::size_t>(n)] = t0 * std::ldexp(1.0, -n);
  return t;
}

std::vector<DiskPoint> build_ray(const BoundaryPoint& target, double offset, double kappa,
                                 const std::vector<double>& depths) {
  const Complex unit = target.unit();
  std::vector<DiskPoint> points;
  points.reserve(depths.size());
  for (double t : depths) {
    const Complex tilt = std::polar(1.0, offset * kappa * t);
    points.push_back(DiskPoint::from(unit * ((1.0 - t) * tilt)));
  }
  return points;
}

bool all_inside(const StolzRegion& region, const BoundaryPoint& target,
                const std::vector<double>& offsets, double kappa,
                const std::vector<double>& depths) {
  for (double offset : offsets) {
    for (const DiskPoint& p : build_ray(target, offset, kappa, depths)) {
      if (!region.contains(p)) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<ApproachPath> make_paths(const BoundaryPoint& target, double gamma, int rays,
                                     int depth, double t0) {
  if (rays < 1) throw_error(ErrorKind::InvalidArgument, "rays must be >= 1");
  if (depth < 1) throw_error(ErrorKind::InvalidArgument, "depth must be >= 1");
  if (!(t0 > 0.0) || t0 > 0.5) {
    throw_error(ErrorKind::InvalidArgument, "t0 must lie in (0, 1/2]");
  }
  const StolzRegion region(target, gamma);  // validates gamma > 1

  const std::vector<double> offsets = ray_offsets(rays);
  const std::vector<double> depths = shell_depths(depth, t0);

  double kappa = 0.0;
  if (rays > 1) {
    double max_offset = 0.0;
    for (double s : offsets) max_offset = std::max(max_offset, std::abs(s));
    // Beyond u = pi the tilt phase wraps and containment is no longer
    // monotone in kappa, so the search stays below that.
    const double hi_cap = kPi / (t0 * max_offset);
    if (!all_inside(region, target, offsets, 1e-9, depths)) {
      throw_error(ErrorKind::ApertureTooNarrow,
                  "no positive tilt admits a nonzero ray offset inside this Stolz region");
    }
    double lo = 1e-9;
    double hi = hi_cap;
    if (all_inside(region, target, offsets, hi, depths)) {
      lo = hi;
    } else {
      for (int iter = 0; iter < 60; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (all_inside(region, target, offsets, mid, depths)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
    }
    kappa = lo;
  }

  std::vector<ApproachPath> paths;
  paths.reserve(offsets.size());
  for (double offset : offsets) {
    paths.push_back(ApproachPath{target, gamma, offset, build_ray(target, offset, kappa, depths)});
  }
  return paths;
}

namespace detail {

PathFit fit_tail(const std::vector<double>& values) {
  PathFit fit;
  const int n = static_cast<int>(values.size());
  fit.samples = n;

  for (double v : values) {
    if (!std::isfinite(v) || v > kUnboundedThreshold) {
      fit.unbounded = true;
      return fit;
    }
  }
  if (n >= kGrowthShells + 1) {
    bool sustained = true;
    for (int i = n - kGrowthShells - 1; i < n - 1; ++i) {
      const double prev = values[static_cast<std::size_t>(i)];
      const double next = values[static_cast<std::size_t>(i + 1)];
      if (!(prev > 0.0) || next < kGrowthFactor * prev) {
        sustained = false;
        break;
      }
    }
    if (sustained) {
      fit.unbounded = true;
      return fit;
    }
  }

  fit.tail_min = *std::min_element(values.begin(), values.end());
  fit.tail_max = *std::max_element(values.begin(), values.end());

  const double last = values[static_cast<std::size_t>(n - 1)];
  const double scale = 1.0 + std::abs(last);

  // Convergence order from the ratio of successive differences; with shell
  // decay ratio 2 the model v_n = L + C 2^{-pn} gives d_{n-1}/d_n = 2^p.
  // Median over the last few pairs guards against one noisy difference.
  std::vector<double> orders;
  for (int k = n - 2; k >= std::max(1, n - 4); --k) {
    const double d_prev = values[static_cast<std::size_t>(k)] - values[static_cast<std::size_t>(k - 1)];
    const double d_next = values[static_cast<std::size_t>(k + 1)] - values[static_cast<std::size_t>(k)];
    if (std::abs(d_prev) <= 1e-15 * scale || std::abs(d_next) <= 1e-15 * scale) continue;
    const double ratio = d_prev / d_next;
    if (ratio > 1.0001) orders.push_back(std::clamp(std::log2(ratio), 0.1, 10.0));
  }

  if (orders.empty()) {
    fit.extrapolated = last;
    fit.order = 0.0;
    return fit;
  }
  std::sort(orders.begin(), orders.end());
  const double p = orders[orders.size() / 2];
  const double d_last = last - values[static_cast<std::size_t>(n - 2)];
  fit.extrapolated = last + d_last / (std::pow(2.0, p) - 1.0);
  fit.order = p;
  return fit;
}

std::vector<PathFit> fit_paths(const PointFunction& f, const std::vector<ApproachPath>& paths,
                               int tail) {
  if (paths.empty()) throw_error(ErrorKind::InvalidArgument, "no approach paths given");
  if (tail < 3) throw_error(ErrorKind::InvalidArgument, "tail must be >= 3");

  std::vector<PathFit> fits;
  fits.reserve(paths.size());
  for (const ApproachPath& path : paths) {
    const int n = static_cast<int>(path.points.size());
    if (n < tail) {
      throw_error(ErrorKind::InsufficientDepth,
                  "path depth is smaller than the extrapolation tail");
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(tail));
    bool overflowed = false;
    for (int i = n - tail; i < n; ++i) {
      double v;
      try {
        v = f(path.points[static_cast<std::size_t>(i)]);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::OverflowNearSingularity) {
          overflowed = true;
          break;
        }
        throw;
      }
      values.push_back(v);
    }
    if (overflowed) {
      PathFit fit;
      fit.unbounded = true;
      fit.samples = tail;
      fits.push_back(fit);
    } else {
      fits.push_back(fit_tail(values));
    }
  }
  return fits;
}

namespace {

double median_order(const std::vector<PathFit>& fits) {
  std::vector<double> orders;
  for (const PathFit& f : fits) {
    if (!f.unbounded) orders.push_back(f.order);
  }
  if (orders.empty()) return 0.0;
  std::sort(orders.begin(), orders.end());
  return orders[orders.size() / 2];
}

int total_samples(const std::vector<PathFit>& fits) {
  int n = 0;
  for (const PathFit& f : fits) n += f.samples;
  return n;
}

}  // namespace

LimitEstimate combine_limit(const std::vector<PathFit>& fits) {
  LimitEstimate est;
  est.samples_used = total_samples(fits);
  for (const PathFit& f : fits) {
    if (f.unbounded) {
      est.kind = LimitKind::Unbounded;
      return est;
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  double mean = 0.0;
  for (const PathFit& f : fits) {
    lo = std::min(lo, f.extrapolated);
    hi = std::max(hi, f.extrapolated);
    mean += f.extrapolated;
  }
  mean /= static_cast<double>(fits.size());

  est.lower_envelope = lo;
  est.upper_envelope = hi;
  est.extrapolated = mean;
  est.convergence_order_estimate = median_order(fits);
  if (hi - lo <= kSpreadTolerance * (1.0 + std::abs(mean))) {
    est.kind = LimitKind::Finite;
    est.value = mean;
  } else {
    est.kind = LimitKind::Undetermined;
  }
  return est;
}

LimitEstimate combine_liminf(const std::vector<PathFit>& fits) {
  LimitEstimate est;
  est.samples_used = total_samples(fits);

  double min_extrap = std::numeric_limits<double>::infinity();
  double min_tail = std::numeric_limits<double>::infinity();
  double max_tail = -std::numeric_limits<double>::infinity();
  bool any_finite = false;
  for (const PathFit& f : fits) {
    if (f.unbounded) continue;  // a blow-up path has liminf +infinity
    any_finite = true;
    min_extrap = std::min(min_extrap, f.extrapolated);
    min_tail = std::min(min_tail, f.tail_min);
    max_tail = std::max(max_tail, f.tail_max);
  }
  if (!any_finite) {
    est.kind = LimitKind::Unbounded;
    return est;
  }
  est.kind = LimitKind::Finite;
  est.value = min_extrap;
  est.extrapolated = min_extrap;
  est.lower_envelope = std::min(min_extrap, min_tail);
  est.upper_envelope = std::max(min_extrap, max_tail);
  est.convergence_order_estimate = median_order(fits);
  return est;
}

}  // namespace detail

LimitEstimate estimate_angular_limit(const PointFunction& f,
                                     const std::vector<ApproachPath>& paths, int tail) {
  return detail::combine_limit(detail::fit_paths(f, paths, tail));
}

LimitEstimate estimate_angular_liminf(const PointFunction& f,
                                      const std::vector<ApproachPath>& paths, int tail) {
  return detail::combine_liminf(detail::fit_paths(f, paths, tail));
}

AngularDerivativeEstimate estimate_angular_derivative(const SelfMap& map,
                                                      const BoundaryPoint& target, double gamma,
                                                      int rays, int depth) {
  const std::vector<ApproachPath> paths = make_paths(target, gamma, rays, depth, 0.5);
  const auto fits = detail::fit_paths(
      [&](const DiskPoint& z) { return jc_quotient(map, z); }, paths, 8);

  AngularDerivativeEstimate est;
  est.method = rays == 1 ? DerivativeMethod::RadialExtrapolation : DerivativeMethod::MultiRayMin;

  const LimitEstimate liminf = detail::combine_liminf(fits);
  if (liminf.is_unbounded()) {
    est.infinite = true;
    return est;
  }
  est.modulus = liminf.value;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& f : fits) {
    if (f.unbounded) continue;
    lo = std::min(lo, f.extrapolated);
    hi = std::max(hi, f.extrapolated);
  }
  est.residual = hi - lo;
  return est;
}

}  // namespace blaschke
