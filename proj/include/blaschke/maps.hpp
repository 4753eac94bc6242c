#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "blaschke/disk_geom.hpp"
#include "blaschke/dual.hpp"

namespace blaschke {

class SelfMap;

// One zero of a finite Blaschke product. Evaluation of the factor at its
// zero is exactly 0; on the unit circle the factor has modulus 1 up to a
// few ulps. Zeros at the origin contribute the plain factor z; every other
// zero contributes (a - z) / (1 - conj(a) z).
struct BlaschkeZero {
  DiskPoint zero;
  int multiplicity = 1;
};

struct SingularAtom {
  BoundaryPoint location;
  double mass = 1.0;
};

struct Identity {};

struct FiniteBlaschke {
  std::vector<BlaschkeZero> zeros;  // never empty
  double rotation = 0.0;            // radians
};

// phi(z) = e^{i rotation} (a - z) / (1 - conj(a) z)
struct Automorphism {
  DiskPoint a;
  double rotation = 0.0;
};

// phi(z) = exp(-sum_k mass_k (zeta_k + z) / (zeta_k - z))
struct AtomicSingular {
  std::vector<SingularAtom> atoms;  // never empty, masses > 0
};

// phi(z) = scale * z + offset with |scale| + |offset| <= 1, |scale| > 0
struct AffineContraction {
  Complex scale;
  Complex offset;
};

struct Composition {
  std::shared_ptr<const SelfMap> outer;
  std::shared_ptr<const SelfMap> inner;
};

// Symbolic analytic self-map of the disk. Immutable after construction;
// evaluation is pure, so values are freely shareable across threads.
class SelfMap {
 public:
  using Node = std::variant<Identity, FiniteBlaschke, Automorphism,
                            AtomicSingular, AffineContraction, Composition>;

  static SelfMap identity();
  static SelfMap finite_blaschke(std::vector<BlaschkeZero> zeros, double rotation = 0.0);
  static SelfMap automorphism(const DiskPoint& a, double rotation = 0.0);
  static SelfMap atomic_singular(std::vector<SingularAtom> atoms);
  static SelfMap affine_contraction(const Complex& scale, const Complex& offset);
  // Runs a quasi-random self-map check (1000 interior points) on the
  // composed tree; the leaf variants are already constrained analytically.
  static SelfMap composition(SelfMap outer, SelfMap inner, std::uint64_t check_seed = 0);

  const Node& node() const noexcept { return node_; }

 private:
  explicit SelfMap(Node node) : node_(std::move(node)) {}
  Node node_;
};

// phi(z), phi'(z) and a stable 1 - |phi(z)|^2 evaluated together.
struct MapValue {
  Complex value;
  Complex derivative;
  double one_minus_mod_sq_value;  // strictly positive
};

// Closed-form value and derivative plus the stable 1 - |phi(z)|^2 path.
// Throws OverflowNearSingularity when z comes within 1e-14 of an atom of an
// AtomicSingular factor.
MapValue evaluate(const SelfMap& map, const DiskPoint& z);

// 1 - |phi(z)|^2 through per-variant identities: the Blaschke factor
// identity summed in log1p form, the one-minus-exponential form for atomic
// singular maps, and the compensated coordinate residual elsewhere.
double stable_one_minus_mod_sq(const SelfMap& map, const DiskPoint& z);

// The direct subtraction 1 - |phi(z)|^2. Kept as the deliberately naive
// reference path; near the circle it loses half its digits or worse.
double naive_one_minus_mod_sq(const SelfMap& map, const DiskPoint& z);

// Atom locations of every AtomicSingular in the map tree (deduplicated,
// discovery order). These are the boundary points excluded from sampling.
std::vector<BoundaryPoint> declared_singular_support(const SelfMap& map);

// Forward-mode dual evaluation; derivative emerges from dual arithmetic
// instead of the closed-form factor derivatives.
CDual evaluate_dual(const SelfMap& map, const Complex& z);

// Truncation of the infinite product with zeros a_k = 1 - 2^{-k},
// k = 1..zero_count.
SelfMap truncated_blaschke_product(int zero_count);

// Low-discrepancy interior point (Halton bases 2 and 3 with a seed-derived
// rotation); |z| stays <= 1 - 2^{-27}.
Complex quasi_random_disk_point(std::uint64_t index, std::uint64_t seed);

namespace detail {

struct RawValue {
  Complex value;
  Complex derivative;
};

// Evaluation at a raw complex argument. Interior DiskPoint callers go
// through evaluate(); composition and boundary-modulus tests need to feed
// values that may have rounded onto the unit circle.
RawValue evaluate_raw(const SelfMap& map, const Complex& z);
double stable_one_minus_mod_sq_raw(const SelfMap& map, const Complex& z);

}  // namespace detail

}  // namespace blaschke
