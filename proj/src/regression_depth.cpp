#include "regdepth/regression_depth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "directional.hpp"
#include "regdepth/random.hpp"

namespace regdepth {

using Kind = MethodSpec::Kind;

namespace {

void check_theta(const RegressionDataset& ds, const Coefficient& theta) {
  if (theta.dim() != ds.dim()) throw InvalidArgument("coefficient dimension does not match dataset");
}

double projected_median(const Matrix& rows, const Vector& u, std::vector<double>& buf) {
  buf.resize(static_cast<std::size_t>(rows.rows()));
  for (Index i = 0; i < rows.rows(); ++i) buf[static_cast<std::size_t>(i)] = rows.row(i).dot(u);
  return median_inplace(buf);
}

double projected_mad(const Matrix& rows, const Vector& u, std::vector<double>& buf) {
  const double med = projected_median(rows, u, buf);
  for (Index i = 0; i < rows.rows(); ++i) buf[static_cast<std::size_t>(i)] = std::abs(rows.row(i).dot(u) - med);
  return median_inplace(buf);
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool positive_definite(const Matrix& s) {
  const double tr = s.trace();
  if (!(tr > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > 1e-10 * tr;
}

Vector rayleigh_mean_gap(const RegressionRayleighSummary& summary, const Coefficient& theta) {
  if (theta.dim() + 1 != summary.g.size()) throw InvalidArgument("coefficient dimension does not match summary");
  return summary.g - summary.gbar * theta.as_vector();
}

// Halfspace and simplicial depth of the origin are unchanged when a point is
// rescaled by a positive factor, so z_i = r_i w_i can be replaced by
// sign(r_i) w_i. Unlike the rounded products r_i x_i, these rows are exact:
// points sharing a covariate value stay exactly collinear with the origin.
PointCloud sign_cloud(const Matrix& w, const Vector& r) {
  Matrix v = w;
  for (Index i = 0; i < v.rows(); ++i) v.row(i) *= static_cast<double>(sign_of(r[i]));
  return PointCloud(std::move(v));
}

}  // namespace

PrdDenominatorCache PrdDenominatorCache::build(const RegressionDataset& ds) {
  Matrix yw = lift(ds).w;
  for (Index i = 0; i < ds.size(); ++i) yw.row(i) *= ds.y()[i];
  return PrdDenominatorCache{std::move(yw)};
}

// ---- evaluator ---------------------------------------------------------

struct RegressionDepth::Cache {
  Matrix w;
  // projection
  PrdDenominatorCache denom;
  std::vector<Vector> directions;
  std::vector<double> mads;
  Method prd_method = Method::bruteforce;
  double spacing = 0.0;
  bool planar = false;
  // rayleigh
  RegressionRayleighSummary summary;
  bool positive_definite = false;
  Eigen::LLT<Matrix> llt;
};

RegressionDepth::RegressionDepth(RegressionDataset ds, Notion notion, MethodSpec method)
    : ds_(std::move(ds)), notion_(notion), method_(method) {
  auto cache = std::make_unique<Cache>();
  cache->w = lift(ds_).w;
  const Index p = ds_.dim() + 1;
  if (notion_ == Notion::projection) {
    if (method_.kind == Kind::exact1d || method_.kind == Kind::exact2d) {
      throw InvalidArgument("projection regression depth has no exact method");
    }
    cache->denom = PrdDenominatorCache::build(ds_);
    const bool sampled = method_.kind == Kind::sampled || (method_.kind == Kind::auto_ && p > 2);
    if (!sampled && p != 2) throw InvalidArgument("angular grid requires a single covariate");
    if (sampled) {
      const int count = method_.num_directions > 0 ? method_.num_directions : kDefaultSampledDirections;
      for (const Direction& u : sample_directions(p, count, method_.seed)) cache->directions.push_back(u.vec());
      cache->prd_method = Method::sampled;
    } else {
      const int count = method_.num_directions > 0 ? method_.num_directions : kDefaultGridAngles;
      for (int k = 0; k < count; ++k) cache->directions.push_back(detail::unit_at_angle(std::numbers::pi / count * k));
      cache->prd_method = Method::bruteforce;
    }
    cache->planar = p == 2;
    cache->spacing = std::numbers::pi / static_cast<double>(cache->directions.size());
    std::vector<double> buf;
    for (const Vector& u : cache->directions) cache->mads.push_back(projected_mad(cache->denom.yw, u, buf));
  } else if (notion_ == Notion::rayleigh) {
    cache->summary = regression_rayleigh_summary(ds_);
    cache->positive_definite = positive_definite(cache->summary.s);
    if (cache->positive_definite) cache->llt.compute(cache->summary.s);
  }
  cache_ = std::move(cache);
}

RegressionDepth::~RegressionDepth() = default;
RegressionDepth::RegressionDepth(RegressionDepth&&) noexcept = default;
RegressionDepth& RegressionDepth::operator=(RegressionDepth&&) noexcept = default;

DepthResult RegressionDepth::operator()(const Coefficient& theta) const {
  check_theta(ds_, theta);
  const Vector origin = Vector::Zero(ds_.dim() + 1);
  switch (notion_) {
    case Notion::halfspace:
      return halfspace_depth(sign_cloud(cache_->w, residuals(ds_, theta)), origin, method_);
    case Notion::simplicial:
      return simplicial_depth(sign_cloud(cache_->w, residuals(ds_, theta)), origin, method_);
    case Notion::zonoid:
      return zonoid_depth(transform_cloud(ds_, theta).cloud(), origin);
    case Notion::projection: {
      const Cache& c = *cache_;
      const Matrix z = transform_cloud(ds_, theta).z;
      std::vector<double> buf;
      double best = -1.0;
      Vector best_u;
      for (std::size_t k = 0; k < c.directions.size(); ++k) {
        const double o = outlyingness_ratio(projected_median(z, c.directions[k], buf), c.mads[k]);
        if (o > best) {
          best = o;
          best_u = c.directions[k];
        }
      }
      if (c.planar && method_.refine && std::isfinite(best)) {
        auto objective = [&](const Vector& u) {
          return outlyingness_ratio(projected_median(z, u, buf), projected_mad(c.denom.yw, u, buf));
        };
        const double phi = std::atan2(best_u[1], best_u[0]);
        detail::golden_refine(objective, phi - c.spacing, phi + c.spacing, best, best_u);
      }
      DepthResult r;
      r.value = depth_from_outlyingness(best);
      r.notion = Notion::projection;
      r.method = c.prd_method;
      r.witness = Direction::normalized(best_u);
      r.num_directions = static_cast<int>(c.directions.size());
      r.seed = c.prd_method == Method::sampled ? method_.seed : 0;
      return r;
    }
    case Notion::rayleigh: {
      const Cache& c = *cache_;
      const Vector gap = rayleigh_mean_gap(c.summary, theta);
      DepthResult r;
      r.notion = Notion::rayleigh;
      if (c.positive_definite) {
        const Vector sol = c.llt.solve(gap);
        r.value = depth_from_outlyingness(std::sqrt(std::max(0.0, gap.dot(sol))));
        r.method = Method::closedform;
        if (sol.norm() > 0.0) r.witness = Direction::normalized(sol);
        return r;
      }
      auto objective = [&](const Vector& u) {
        return outlyingness_ratio(u.dot(gap), quadratic_scale(c.summary.s, u));
      };
      const detail::DirectionalSup sup = detail::directional_sup(gap.size(), method_, objective);
      r.value = depth_from_outlyingness(sup.value);
      r.method = sup.method;
      r.witness = Direction::normalized(sup.direction);
      r.num_directions = sup.num_directions;
      r.seed = sup.method == Method::sampled ? method_.seed : 0;
      return r;
    }
  }
  throw InvalidArgument("unknown notion");
}

DepthResult regression_depth(const RegressionDataset& ds, Notion notion, const Coefficient& theta,
                             const MethodSpec& m) {
  return RegressionDepth(ds, notion, m)(theta);
}

// ---- free functions ----------------------------------------------------

DepthResult hrd(const RegressionDataset& ds, const Coefficient& theta, const MethodSpec& m) {
  return regression_depth(ds, Notion::halfspace, theta, m);
}

double hrd_direct_objective(const RegressionDataset& ds, const Coefficient& theta, const HyperplaneWitness& h) {
  if (ds.dim() != 1) throw InvalidArgument("direct halfspace regression depth requires a single covariate");
  const Vector r = residuals(ds, theta);
  const double v1 = h.v1[0];
  long ge = 0;
  long le = 0;
  for (Index i = 0; i < ds.size(); ++i) {
    const int s = sign_of(r[i]) * sign_of(v1 * ds.x()(i, 0) - h.v0);
    if (s >= 0) ++ge;
    if (s <= 0) ++le;
  }
  return static_cast<double>(std::min(ge, le)) / static_cast<double>(ds.size());
}

DepthResult hrd_direct(const RegressionDataset& ds, const Coefficient& theta) {
  check_theta(ds, theta);
  if (ds.dim() != 1) throw InvalidArgument("direct halfspace regression depth requires a single covariate");
  std::vector<double> xs(ds.x().data(), ds.x().data() + ds.size());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  // v0 at every data value, every gap midpoint and beyond both ends.
  std::vector<double> cuts;
  cuts.push_back(xs.front() - 1.0);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    cuts.push_back(xs[k]);
    if (k + 1 < xs.size()) cuts.push_back(xs[k] + (xs[k + 1] - xs[k]) / 2.0);
  }
  cuts.push_back(xs.back() + 1.0);

  double best = 2.0;
  HyperplaneWitness best_h{0.0, Direction(Vector::Ones(1))};
  for (double v1 : {1.0, -1.0}) {
    const Direction dir(Vector::Constant(1, v1));
    for (double c : cuts) {
      const HyperplaneWitness h{v1 * c, dir};
      const double val = hrd_direct_objective(ds, theta, h);
      if (val < best) {
        best = val;
        best_h = h;
      }
    }
  }
  DepthResult r;
  r.value = best;
  r.notion = Notion::halfspace;
  r.method = Method::bruteforce;
  r.witness = best_h;
  return r;
}

DepthResult srd(const RegressionDataset& ds, const Coefficient& theta, const MethodSpec& m) {
  return regression_depth(ds, Notion::simplicial, theta, m);
}

double prd_objective(const RegressionDataset& ds, const Coefficient& theta, const Direction& u) {
  check_theta(ds, theta);
  if (u.dim() != ds.dim() + 1) throw InvalidArgument("direction must have dimension d + 1");
  const PrdDenominatorCache denom = PrdDenominatorCache::build(ds);
  const Matrix z = transform_cloud(ds, theta).z;
  std::vector<double> buf;
  return outlyingness_ratio(projected_median(z, u.vec(), buf), projected_mad(denom.yw, u.vec(), buf));
}

DepthResult prd(const RegressionDataset& ds, const Coefficient& theta, const MethodSpec& m) {
  return regression_depth(ds, Notion::projection, theta, m);
}

RegressionRayleighSummary regression_rayleigh_summary(const RegressionDataset& ds) {
  if (ds.size() < 2) throw InvalidArgument("Rayleigh regression summary needs at least two observations");
  const double n = static_cast<double>(ds.size());
  const Matrix w = lift(ds).w;
  const Matrix yw = PrdDenominatorCache::build(ds).yw;
  Vector g = yw.colwise().sum().transpose() / n;
  Matrix gbar = (w.transpose() * w) / n;
  const Matrix centered = yw.rowwise() - g.transpose();
  Matrix s = (centered.transpose() * centered) / n;
  gbar = (0.5 * (gbar + gbar.transpose())).eval();
  s = (0.5 * (s + s.transpose())).eval();
  return RegressionRayleighSummary{std::move(g), std::move(gbar), std::move(s)};
}

double rrd_outlyingness(const RegressionRayleighSummary& summary, const Coefficient& theta) {
  if (!positive_definite(summary.s)) throw SingularMatrix("covariance of y*w is not positive definite");
  const Vector gap = rayleigh_mean_gap(summary, theta);
  Eigen::LLT<Matrix> llt(summary.s);
  return std::sqrt(std::max(0.0, gap.dot(llt.solve(gap))));
}

double rrd_objective(const RegressionRayleighSummary& summary, const Coefficient& theta, const Direction& u) {
  const Vector gap = rayleigh_mean_gap(summary, theta);
  if (u.dim() != gap.size()) throw InvalidArgument("direction must have dimension d + 1");
  return outlyingness_ratio(u.vec().dot(gap), quadratic_scale(summary.s, u.vec()));
}

DepthResult rrd(const RegressionDataset& ds, const Coefficient& theta, const std::optional<MethodSpec>& fallback) {
  if (!fallback && !positive_definite(regression_rayleigh_summary(ds).s)) {
    throw SingularMatrix("covariance of y*w is not positive definite and no fallback was requested");
  }
  return regression_depth(ds, Notion::rayleigh, theta, fallback.value_or(MethodSpec{}));
}

DepthResult zrd(const RegressionDataset& ds, const Coefficient& theta) {
  return regression_depth(ds, Notion::zonoid, theta);
}

}  // namespace regdepth
