#include "regdepth/core.hpp"

#include <algorithm>
#include <cmath>

namespace regdepth {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

void require_finite(const auto& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + " contains non-finite entries");
}

}  // namespace

PointCloud::PointCloud(Matrix points) : points_(std::move(points)) {
  if (points_.rows() < 1) throw InvalidArgument("point cloud needs at least one point");
  if (points_.cols() < 1) throw InvalidArgument("point cloud needs dimension >= 1");
  require_finite(points_, "point cloud");
}

Direction::Direction(Vector u) : u_(std::move(u)) {
  if (u_.size() < 1) throw InvalidArgument("direction must have dimension >= 1");
  require_finite(u_, "direction");
  if (std::abs(u_.norm() - 1.0) > 1e-12) throw InvalidArgument("direction is not a unit vector");
}

Direction Direction::normalized(const Vector& v) {
  const double nrm = v.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  return Direction(v / nrm);
}

RegressionDataset::RegressionDataset(Matrix x, Vector y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() < 1) throw InvalidArgument("regression dataset needs at least one observation");
  if (x_.cols() < 1) throw InvalidArgument("regression dataset needs at least one covariate");
  if (x_.rows() != y_.size()) throw InvalidArgument("covariates and responses are not row-aligned");
  require_finite(x_, "covariates");
  require_finite(y_, "responses");
}

Coefficient::Coefficient(double beta0, Vector beta1) : beta0_(beta0), beta1_(std::move(beta1)) {
  if (beta1_.size() < 1) throw InvalidArgument("coefficient needs at least one slope");
  if (!std::isfinite(beta0_)) throw InvalidArgument("intercept is not finite");
  require_finite(beta1_, "slopes");
}

Coefficient Coefficient::from_vector(const Vector& theta) {
  if (theta.size() < 2) throw InvalidArgument("coefficient vector needs length >= 2");
  return Coefficient(theta[0], theta.tail(theta.size() - 1));
}

Vector Coefficient::as_vector() const {
  Vector v(beta1_.size() + 1);
  v[0] = beta0_;
  v.tail(beta1_.size()) = beta1_;
  return v;
}

std::string_view to_string(Notion notion) {
  switch (notion) {
    case Notion::halfspace: return "halfspace";
    case Notion::simplicial: return "simplicial";
    case Notion::projection: return "projection";
    case Notion::rayleigh: return "rayleigh";
    case Notion::zonoid: return "zonoid";
  }
  return "unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::exact1d: return "exact1d";
    case Method::exact2d: return "exact2d";
    case Method::bruteforce: return "bruteforce";
    case Method::sampled: return "sampled";
    case Method::closedform: return "closedform";
    case Method::lp: return "lp";
  }
  return "unknown";
}

Notion parse_notion(std::string_view name) {
  for (Notion n : {Notion::halfspace, Notion::simplicial, Notion::projection, Notion::rayleigh, Notion::zonoid}) {
    if (to_string(n) == name) return n;
  }
  throw InvalidArgument("unknown depth notion '" + std::string(name) + "'");
}

LiftedDesign lift(const RegressionDataset& ds) {
  LiftedDesign out{Matrix(ds.size(), ds.dim() + 1)};
  out.w.col(0).setOnes();
  out.w.rightCols(ds.dim()) = ds.x();
  return out;
}

Vector residuals(const RegressionDataset& ds, const Coefficient& theta) {
  if (theta.dim() != ds.dim()) throw InvalidArgument("coefficient dimension does not match dataset");
  Vector r(ds.size());
  for (Index i = 0; i < ds.size(); ++i) {
    r[i] = ds.y()[i] - (theta.beta0() + ds.x().row(i).dot(theta.beta1()));
  }
  return r;
}

TransformedCloud transform_cloud(const RegressionDataset& ds, const Coefficient& theta) {
  Vector r = residuals(ds, theta);
  Matrix z(ds.size(), ds.dim() + 1);
  for (Index i = 0; i < ds.size(); ++i) {
    z(i, 0) = r[i];
    for (Index j = 0; j < ds.dim(); ++j) z(i, j + 1) = r[i] * ds.x()(i, j);
  }
  return TransformedCloud{std::move(r), std::move(z), theta};
}

double median_inplace(std::span<double> v) {
  if (v.empty()) throw InvalidArgument("median of an empty sample");
  const std::size_t m = v.size();
  // 0-based ranks of z_(floor((m+1)/2)) and z_(floor((m+2)/2))
  const std::size_t lo = (m + 1) / 2 - 1;
  const std::size_t hi = (m + 2) / 2 - 1;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(hi), v.end());
  const double b = v[hi];
  if (lo == hi) return b;
  const double a = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(hi));
  return (a + b) / 2.0;
}

double median1d(std::span<const double> v) {
  std::vector<double> copy(v.begin(), v.end());
  return median_inplace(copy);
}

double mad1d(std::span<const double> v) {
  std::vector<double> dev(v.begin(), v.end());
  const double med = median_inplace(dev);
  for (std::size_t i = 0; i < v.size(); ++i) dev[i] = std::abs(v[i] - med);
  return median_inplace(dev);
}

Vector project(const PointCloud& cloud, const Direction& u) {
  if (u.dim() != cloud.dim()) throw InvalidArgument("direction dimension does not match cloud");
  return cloud.points() * u.vec();
}

}  // namespace regdepth
