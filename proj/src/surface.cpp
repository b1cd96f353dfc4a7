#include "regdepth/surface.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "regdepth/random.hpp"
#include "regdepth/regression_depth.hpp"

namespace regdepth {

double AxisSpec::node(int k) const {
  if (k + 1 == count) return hi;
  return lo + k * ((hi - lo) / (count - 1));
}

void GridSpec::validate() const {
  for (const AxisSpec* a : {&beta0, &beta1}) {
    if (a->count < 2) throw InvalidArgument("grid needs at least 2 nodes per axis");
    if (!(a->lo < a->hi) || !std::isfinite(a->lo) || !std::isfinite(a->hi)) {
      throw InvalidArgument("grid axis needs finite lo < hi");
    }
  }
}

GridSpec default_grid(Notion notion) {
  const int count = notion == Notion::simplicial ? 41 : 101;
  return GridSpec{{0.0, 1.0, count}, {0.0, 1.0, count}};
}

DepthSurface eval_surface(const RegressionDataset& ds, Notion notion, const MethodSpec& m, const GridSpec& g,
                          int threads) {
  g.validate();
  if (ds.dim() != 1) throw InvalidArgument("depth surfaces need a single covariate");
  const RegressionDepth depth(ds, notion, m);
  const int c0 = g.beta0.count;
  const int c1 = g.beta1.count;
  Matrix values(c0, c1);
  std::vector<Method> methods(static_cast<std::size_t>(c0) * static_cast<std::size_t>(c1));
  detail::parallel_for(methods.size(), threads, [&](std::size_t k) {
    const int i = static_cast<int>(k) / c1;
    const int j = static_cast<int>(k) % c1;
    const Coefficient theta(g.beta0.node(i), Vector::Constant(1, g.beta1.node(j)));
    try {
      const DepthResult r = depth(theta);
      values(i, j) = r.value;
      methods[k] = r.method;
    } catch (...) {
      std::ostringstream os;
      os.precision(17);
      os << "surface node (" << i << ", " << j << ") at theta = (" << theta.beta0() << ", " << theta.beta1()[0] << ")";
      detail::rethrow_with_context(std::current_exception(), os.str());
    }
  });
  return DepthSurface{g, std::move(values), notion, methods.front()};
}

namespace {

struct Segment {
  int a;
  int b;
};

class MarchingSquares {
 public:
  MarchingSquares(const DepthSurface& s, double level)
      : s_(s), level_(level), c0_(s.grid.beta0.count), c1_(s.grid.beta1.count),
        links_(static_cast<std::size_t>(2 * c0_ * c1_), {-1, -1}) {}

  std::vector<Polyline> run() {
    for (int i = 0; i + 1 < c0_; ++i) {
      for (int j = 0; j + 1 < c1_; ++j) cell(i, j);
    }
    return stitch();
  }

 private:
  // edge ids: 2 * node + 0 runs along beta0 from node (i, j); 2 * node + 1 along beta1
  int node_id(int i, int j) const { return i * c1_ + j; }
  int h_edge(int i, int j) const { return 2 * node_id(i, j); }
  int v_edge(int i, int j) const { return 2 * node_id(i, j) + 1; }
  bool inside(int i, int j) const { return s_.values(i, j) >= level_; }

  std::array<double, 2> crossing(int edge) const {
    const int node = edge / 2;
    const int i = node / c1_;
    const int j = node % c1_;
    const int i2 = edge % 2 == 0 ? i + 1 : i;
    const int j2 = edge % 2 == 0 ? j : j + 1;
    const double fa = s_.values(i, j);
    const double fb = s_.values(i2, j2);
    const double t = (level_ - fa) / (fb - fa);
    const double x0 = s_.grid.beta0.node(i);
    const double y0 = s_.grid.beta1.node(j);
    const double x1 = s_.grid.beta0.node(i2);
    const double y1 = s_.grid.beta1.node(j2);
    return {x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
  }

  void add(int ea, int eb) {
    const int id = static_cast<int>(segments_.size());
    segments_.push_back({ea, eb});
    for (int e : {ea, eb}) {
      auto& l = links_[static_cast<std::size_t>(e)];
      (l[0] < 0 ? l[0] : l[1]) = id;
    }
  }

  void cell(int i, int j) {
    // corners counter-clockwise from (i, j); edge k joins corner k and k + 1
    const bool in[4] = {inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)};
    const int edge[4] = {h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
    int crossed[4];
    int nc = 0;
    for (int k = 0; k < 4; ++k) {
      if (in[k] != in[(k + 1) % 4]) crossed[nc++] = k;
    }
    if (nc == 2) {
      add(edge[crossed[0]], edge[crossed[1]]);
      return;
    }
    if (nc != 4) return;
    const double center = (s_.values(i, j) + s_.values(i + 1, j) + s_.values(i + 1, j + 1) + s_.values(i, j + 1)) / 4.0;
    // Cut off the two corners that differ from the center's classification.
    const bool center_in = center >= level_;
    for (int k = 0; k < 4; ++k) {
      if (in[k] != center_in) add(edge[(k + 3) % 4], edge[k]);
    }
  }

  std::vector<Polyline> stitch() {
    std::vector<Polyline> out;
    std::vector<bool> used(segments_.size(), false);
    auto walk = [&](int start_edge, int first_seg) {
      Polyline line;
      line.push_back(crossing(start_edge));
      int edge = start_edge;
      int seg = first_seg;
      while (seg >= 0 && !used[static_cast<std::size_t>(seg)]) {
        used[static_cast<std::size_t>(seg)] = true;
        const Segment& sg = segments_[static_cast<std::size_t>(seg)];
        edge = sg.a == edge ? sg.b : sg.a;
        line.push_back(crossing(edge));
        const auto& l = links_[static_cast<std::size_t>(edge)];
        seg = l[0] == seg ? l[1] : l[0];
      }
      out.push_back(std::move(line));
    };
    for (std::size_t e = 0; e < links_.size(); ++e) {
      const auto& l = links_[e];
      if (l[0] >= 0 && l[1] < 0 && !used[static_cast<std::size_t>(l[0])]) walk(static_cast<int>(e), l[0]);
    }
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      if (!used[k]) walk(segments_[k].a, static_cast<int>(k));
    }
    return out;
  }

  const DepthSurface& s_;
  double level_;
  int c0_;
  int c1_;
  std::vector<std::array<int, 2>> links_;
  std::vector<Segment> segments_;
};

}  // namespace

ContourSet contour_lines(const DepthSurface& s, const std::vector<double>& levels) {
  s.grid.validate();
  if (s.values.rows() != s.grid.beta0.count || s.values.cols() != s.grid.beta1.count) {
    throw InvalidArgument("surface values do not match the grid");
  }
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (!std::isfinite(levels[k])) throw InvalidArgument("contour levels must be finite");
    if (k > 0 && !(levels[k - 1] < levels[k])) throw InvalidArgument("contour levels must be strictly ascending");
  }
  ContourSet out;
  out.levels = levels;
  for (double level : levels) out.polylines.push_back(MarchingSquares(s, level).run());
  return out;
}

std::vector<double> default_levels(Notion notion) {
  switch (notion) {
    case Notion::halfspace: return {0.1500, 0.1956, 0.2411, 0.2867, 0.3323, 0.3779, 0.4234};
    case Notion::simplicial: return {0.0800, 0.1046, 0.1292, 0.1538, 0.1784, 0.2030, 0.2276};
    case Notion::projection: return {0.6000, 0.6546, 0.7092, 0.7637, 0.8183, 0.8729, 0.9275};
    case Notion::rayleigh: return {0.6000, 0.6561, 0.7123, 0.7684, 0.8245, 0.8807, 0.9368};
    case Notion::zonoid: return {0.3000, 0.3992, 0.4985, 0.5977, 0.6970, 0.7962, 0.8954};
  }
  throw InvalidArgument("unknown notion");
}

RayReport ray_monotonicity(const RegressionDataset& ds, Notion notion, const MethodSpec& m, const RaySpec& spec) {
  if (spec.steps < 2) throw InvalidArgument("ray diagnostic needs at least 2 steps");
  if (spec.num_rays < 1) throw InvalidArgument("ray diagnostic needs at least one ray");
  if (!(spec.radius > 0.0)) throw InvalidArgument("ray radius must be positive");
  if (spec.center.dim() != ds.dim()) throw InvalidArgument("ray center dimension does not match dataset");
  const RegressionDepth depth(ds, notion, m);
  const std::vector<Direction> dirs = sample_directions(ds.dim() + 1, spec.num_rays, spec.seed);
  const Vector c = spec.center.as_vector();

  RayReport rep;
  rep.num_rays = spec.num_rays;
  rep.steps = spec.steps;
  rep.tolerance = spec.tolerance;
  rep.profiles.resize(spec.num_rays, spec.steps);
  detail::parallel_for(static_cast<std::size_t>(spec.num_rays) * static_cast<std::size_t>(spec.steps), 0,
                       [&](std::size_t k) {
                         const int r = static_cast<int>(k) / spec.steps;
                         const int st = static_cast<int>(k) % spec.steps;
                         const double lambda = spec.radius * st / (spec.steps - 1);
                         const Vector theta = c + lambda * dirs[static_cast<std::size_t>(r)].vec();
                         rep.profiles(r, st) = depth(Coefficient::from_vector(theta)).value;
                       });
  for (int r = 0; r < spec.num_rays; ++r) {
    for (int st = 0; st + 1 < spec.steps; ++st) {
      const double inc = rep.profiles(r, st + 1) - rep.profiles(r, st);
      if (inc > spec.tolerance) {
        ++rep.violations;
        rep.details.push_back({r, st, inc});
        rep.worst_increase = std::max(rep.worst_increase, inc);
      }
    }
  }
  return rep;
}

}  // namespace regdepth
