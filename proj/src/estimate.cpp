#include "regdepth/estimate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"

namespace regdepth {

Coefficient ols(const RegressionDataset& ds) {
  const Matrix w = lift(ds).w;
  if (ds.size() < w.cols()) throw SingularMatrix("least squares needs at least d + 1 observations");
  Eigen::JacobiSVD<Matrix> svd(w);
  const Vector sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  if (!(smin > 0.0) || (sv[0] / smin) * (sv[0] / smin) > 1e12) {
    throw SingularMatrix("design matrix is singular or ill-conditioned (cond(W'W) > 1e12)");
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(w);
  return Coefficient::from_vector(qr.solve(ds.y()));
}

namespace {

struct Level {
  std::vector<Coefficient> nodes;
  double h0;
  double h1;
};

Coefficient make_theta(double b0, double b1) { return Coefficient(b0, Vector::Constant(1, b1)); }

Level first_level(const SearchSpec& spec) {
  Level lv;
  const auto& box = spec.box;
  lv.h0 = (box[0][1] - box[0][0]) / (spec.coarse - 1);
  lv.h1 = (box[1][1] - box[1][0]) / (spec.coarse - 1);
  for (int i = 0; i < spec.coarse; ++i) {
    const double b0 = i + 1 == spec.coarse ? box[0][1] : box[0][0] + i * lv.h0;
    for (int j = 0; j < spec.coarse; ++j) {
      const double b1 = j + 1 == spec.coarse ? box[1][1] : box[1][0] + j * lv.h1;
      lv.nodes.push_back(make_theta(b0, b1));
    }
  }
  return lv;
}

// Grid of spec.coarse^2 nodes around `center`; the center is always a node.
Level refined_level(const SearchSpec& spec, const Coefficient& center, double h0, double h1) {
  Level lv{{}, h0, h1};
  const double mid = (spec.coarse - 1) / 2.0;
  const bool odd = spec.coarse % 2 == 1;
  for (int i = 0; i < spec.coarse; ++i) {
    const double b0 = odd && 2 * i == spec.coarse - 1 ? center.beta0() : center.beta0() + (i - mid) * h0;
    for (int j = 0; j < spec.coarse; ++j) {
      const double b1 = odd && 2 * j == spec.coarse - 1 ? center.beta1()[0] : center.beta1()[0] + (j - mid) * h1;
      lv.nodes.push_back(make_theta(b0, b1));
    }
  }
  if (!odd) lv.nodes.push_back(center);
  return lv;
}

std::string describe(const Coefficient& theta) {
  std::ostringstream os;
  os.precision(17);
  os << "depth evaluation failed at theta = (" << theta.beta0() << ", " << theta.beta1()[0] << ")";
  return os.str();
}

}  // namespace

FitResult deepest_fit(const RegressionDataset& ds, const SearchSpec& spec) {
  if (ds.dim() != 1) throw InvalidArgument("deepest_fit supports a single covariate only");
  if (spec.coarse < 3) throw InvalidArgument("coarse grid needs at least 3 points per axis");
  if (spec.refine_levels < 0) throw InvalidArgument("refine_levels must be >= 0");
  for (const auto& iv : spec.box) {
    if (!(iv[0] < iv[1]) || !std::isfinite(iv[0]) || !std::isfinite(iv[1])) {
      throw InvalidArgument("search box needs finite lo < hi on each axis");
    }
  }
  constexpr double kTieTol = 1e-12;
  const RegressionDepth depth(ds, spec.notion, spec.method);

  std::vector<double> level_best;
  std::vector<GridCell> argmax_cells;
  Coefficient incumbent = make_theta(0.0, 0.0);
  Level lv = first_level(spec);

  for (int level = 0; level <= spec.refine_levels; ++level) {
    std::vector<double> values(lv.nodes.size());
    detail::parallel_for(lv.nodes.size(), spec.threads, [&](std::size_t k) {
      try {
        values[k] = depth(lv.nodes[k]).value;
      } catch (...) {
        detail::rethrow_with_context(std::current_exception(), describe(lv.nodes[k]));
      }
    });
    const double best = *std::max_element(values.begin(), values.end());

    argmax_cells.clear();
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
      if (values[k] >= best - kTieTol) {
        argmax_cells.push_back(GridCell{lv.nodes[k], lv.h0 / 2.0, lv.h1 / 2.0});
        s0 += lv.nodes[k].beta0();
        s1 += lv.nodes[k].beta1()[0];
      }
    }
    const double count = static_cast<double>(argmax_cells.size());
    const Coefficient average = make_theta(s0 / count, s1 / count);
    const double avg_value = depth(average).value;
    if (avg_value >= best - kTieTol) {
      incumbent = average;
      level_best.push_back(avg_value);
    } else {
      std::size_t nearest = 0;
      double nearest_dist = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < argmax_cells.size(); ++k) {
        const double d0 = argmax_cells[k].center.beta0() - average.beta0();
        const double d1 = argmax_cells[k].center.beta1()[0] - average.beta1()[0];
        const double dist = d0 * d0 + d1 * d1;
        if (dist < nearest_dist) {
          nearest_dist = dist;
          nearest = k;
        }
      }
      const GridCell keep = argmax_cells[nearest];
      argmax_cells.assign(1, keep);
      incumbent = keep.center;
      level_best.push_back(best);
    }
    if (level < spec.refine_levels) lv = refined_level(spec, incumbent, lv.h0 / 4.0, lv.h1 / 4.0);
  }

  FitResult out{incumbent, depth(incumbent), std::move(argmax_cells), std::move(level_best), false};
  const double tol0 = lv.h0 / 2.0;
  const double tol1 = lv.h1 / 2.0;
  const double b0 = incumbent.beta0();
  const double b1 = incumbent.beta1()[0];
  out.on_boundary = b0 <= spec.box[0][0] + tol0 || b0 >= spec.box[0][1] - tol0 || b1 <= spec.box[1][0] + tol1 ||
                    b1 >= spec.box[1][1] - tol1;
  return out;
}

}  // namespace regdepth
