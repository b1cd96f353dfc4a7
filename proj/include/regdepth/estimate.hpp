#pragma once

#include <array>
#include <vector>

#include "regdepth/core.hpp"
#include "regdepth/location_depth.hpp"
#include "regdepth/regression_depth.hpp"

namespace regdepth {

/// Least squares fit (sum w_i w_i')^-1 sum w_i y_i via column-pivoted
/// Householder QR. Throws SingularMatrix when cond(W'W) exceeds 1e12.
Coefficient ols(const RegressionDataset& ds);

struct SearchSpec {
  /// [lo, hi] for beta0 and beta1.
  std::array<std::array<double, 2>, 2> box{{{0.0, 1.0}, {0.0, 1.0}}};
  int coarse = 41;
  int refine_levels = 3;
  Notion notion = Notion::halfspace;
  MethodSpec method;
  /// Worker threads for grid evaluation; 0 reads REGDEPTH_THREADS (unset or
  /// 0 means all cores).
  int threads = 0;
};

struct GridCell {
  Coefficient center;
  double half_width0;
  double half_width1;
};

struct FitResult {
  Coefficient theta_star;
  DepthResult depth;
  std::vector<GridCell> argmax_cells;
  /// Best grid value at each level; non-decreasing.
  std::vector<double> level_best;
  /// theta_star touches the search box boundary (the box may be too small).
  bool on_boundary = false;
};

/// Coarse-to-fine grid maximization of a regression depth for d = 1. Each
/// refinement level re-grids a box 4x narrower centered on the incumbent,
/// with the incumbent itself as a node. Maximizers within 1e-12 of the best
/// value are averaged (the median convention); if their average is itself
/// shallower than the best value, the argmax node nearest to the average is
/// reported instead and becomes the single argmax cell.
FitResult deepest_fit(const RegressionDataset& ds, const SearchSpec& spec);

}  // namespace regdepth
