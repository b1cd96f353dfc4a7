#pragma once

// Depth surfaces over (beta0, beta1) grids, their iso-level polylines, and a
// ray-monotonicity diagnostic.

#include <array>
#include <cstdint>
#include <vector>

#include "regdepth/core.hpp"
#include "regdepth/location_depth.hpp"

namespace regdepth {

struct AxisSpec {
  double lo;
  double hi;
  int count;

  /// Node k; the last node is exactly hi.
  double node(int k) const;
};

struct GridSpec {
  AxisSpec beta0{0.0, 1.0, 101};
  AxisSpec beta1{0.0, 1.0, 101};

  void validate() const;
};

struct DepthSurface {
  GridSpec grid;
  /// beta0.count x beta1.count; values(i, j) is the depth at (beta0 node i, beta1 node j).
  Matrix values;
  Notion notion = Notion::halfspace;
  Method method = Method::exact2d;
};

using Polyline = std::vector<std::array<double, 2>>;

struct ContourSet {
  std::vector<double> levels;
  /// One entry per level. Closed polylines repeat their first vertex at the end.
  std::vector<std::vector<Polyline>> polylines;
};

/// Default grid size for a notion at n = 300: 41 x 41 for simplicial, 101 x
/// 101 otherwise, over [0, 1]^2.
GridSpec default_grid(Notion notion);

/// Every node evaluated with one shared RegressionDepth, optionally across
/// `threads` workers (0 reads REGDEPTH_THREADS). Requires d = 1.
DepthSurface eval_surface(const RegressionDataset& ds, Notion notion, const MethodSpec& m, const GridSpec& g,
                          int threads = 0);

/// Marching squares on the node grid. A node is inside when its value is >=
/// level; crossings are placed by linear interpolation along cell edges and
/// saddle cells are resolved with the average of the four corners. For
/// step-function surfaces (halfspace, simplicial) the polylines are level
/// sets of the bilinear interpolant of the node values.
ContourSet contour_lines(const DepthSurface& s, const std::vector<double>& levels);

/// Seven default contour levels per notion, from the periphery inwards, for
/// the synthetic model over [0, 1]^2.
std::vector<double> default_levels(Notion notion);

struct RayViolation {
  int ray;
  int step;  // depth(step + 1) exceeds depth(step)
  double increase;
};

struct RayReport {
  int num_rays = 0;
  int steps = 0;
  double tolerance = 0.0;
  int violations = 0;
  double worst_increase = 0.0;
  std::vector<RayViolation> details;
  /// depth along each ray, num_rays x steps
  Matrix profiles;
};

struct RaySpec {
  Coefficient center;
  int num_rays = 16;
  double radius = 1.0;
  int steps = 50;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

/// Walks `num_rays` seeded uniform directions from the center, sampling
/// depth at radius * k / (steps - 1), and records every step where depth
/// rises by more than the tolerance. A report, never an assertion.
RayReport ray_monotonicity(const RegressionDataset& ds, Notion notion, const MethodSpec& m, const RaySpec& spec);

}  // namespace regdepth
