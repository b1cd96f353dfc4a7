#pragma once

// Location depth functions: halfspace (Tukey), simplicial, projection,
// Rayleigh and zonoid depth of a point x with respect to a sample.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>

#include "regdepth/core.hpp"

namespace regdepth {

/// How a depth is computed.
///
///  - auto_: exact1d for d = 1, exact2d for d = 2 where available, otherwise
///    the notion's general fallback (sampled directions for halfspace and
///    projection, brute force for simplicial).
///  - exact1d / exact2d: exact algorithms, dimension-checked.
///  - bruteforce: exhaustive enumeration (simplices, critical directions, or
///    a deterministic angular grid for projection depth in the plane).
///  - sampled: num_directions seeded uniform directions; the reported value is
///    an upper bound on the depth.
struct MethodSpec {
  enum class Kind { auto_, exact1d, exact2d, bruteforce, sampled };

  Kind kind = Kind::auto_;
  /// 0 selects the method default (2048 grid angles, 4096 sampled directions).
  int num_directions = 0;
  std::uint64_t seed = 0;
  /// Golden-section refinement around the best planar grid direction.
  bool refine = true;

  static MethodSpec sampled(int num_directions, std::uint64_t seed) {
    return MethodSpec{Kind::sampled, num_directions, seed, true};
  }
  static MethodSpec of(Kind kind) { return MethodSpec{kind, 0, 0, true}; }
};

MethodSpec::Kind parse_method_kind(std::string_view name);
std::string_view to_string(MethodSpec::Kind kind);

inline constexpr int kDefaultGridAngles = 2048;
inline constexpr int kDefaultSampledDirections = 4096;

struct RayleighSummary {
  Vector mean;
  Matrix cov;  // divisor n
};

DepthResult halfspace_depth(const PointCloud& cloud, const Vector& x, const MethodSpec& m = {});
DepthResult simplicial_depth(const PointCloud& cloud, const Vector& x, const MethodSpec& m = {});
DepthResult projection_depth(const PointCloud& cloud, const Vector& x, const MethodSpec& m = {});

RayleighSummary rayleigh_summary(const PointCloud& cloud);

/// Closed-form Rayleigh depth 1 / (1 + sqrt((x - mu)' S^-1 (x - mu))).
/// When the covariance is not positive definite the supremum is taken over
/// `fallback` directions instead; with no fallback a SingularMatrix error is
/// thrown.
DepthResult rayleigh_depth(const PointCloud& cloud, const Vector& x,
                           const std::optional<MethodSpec>& fallback = MethodSpec::of(MethodSpec::Kind::auto_));

/// Zonoid depth via the zonoid LP. Value 0 (no witness) outside the convex
/// hull; otherwise the witness is the optimal ZonoidCertificate.
DepthResult zonoid_depth(const PointCloud& cloud, const Vector& x);

// Objectives at a fixed direction, used for witness validation.

/// (1/n) #{i : u'X_i <= u'x}
double halfspace_fraction(const PointCloud& cloud, const Vector& x, const Direction& u);
/// |u'x - Med(u'X)| / MAD(u'X) with 0/0 = 0 and c/0 = +inf.
double projection_outlyingness(const PointCloud& cloud, const Vector& x, const Direction& u);
/// |u'(x - mu)| / sqrt(u' S u) with the same zero-denominator convention.
double rayleigh_outlyingness(const RayleighSummary& summary, const Vector& x, const Direction& u);

/// Ratio convention shared by the projection-type outlyingness functions.
inline double outlyingness_ratio(double numerator, double denominator) {
  numerator = numerator < 0 ? -numerator : numerator;
  if (denominator > 0.0) return numerator / denominator;
  return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

/// sqrt(u'Su), or 0 when u'Su is within rounding of zero relative to
/// trace(S), so directions in the null space of a singular S give c/0.
inline double quadratic_scale(const Matrix& s, const Vector& u) {
  const double var = u.dot(s * u);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * s.trace();
  return var > floor && var > 0.0 ? std::sqrt(var) : 0.0;
}

inline double depth_from_outlyingness(double o) { return std::isinf(o) ? 0.0 : 1.0 / (1.0 + o); }

}  // namespace regdepth
