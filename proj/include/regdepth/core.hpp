#pragma once

// Domain types shared by every depth module: point clouds, regression
// datasets, coefficients and the residual transform that turns a regression
// depth question into a location depth question at the origin.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace regdepth {

using Index = Eigen::Index;
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: dimension mismatch, empty sample, unsupported method.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be invertible (covariance, design Gram) is not.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Numerical routine gave up (iteration cap, breakdown). Never used to
/// signal a legitimate mathematical outcome such as LP infeasibility.
class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// n x d sample, one observation per row.
class PointCloud {
 public:
  explicit PointCloud(Matrix points);

  const Matrix& points() const noexcept { return points_; }
  Index size() const noexcept { return points_.rows(); }
  Index dim() const noexcept { return points_.cols(); }
  auto point(Index i) const { return points_.row(i); }

 private:
  Matrix points_;
};

/// Unit vector. Construction rejects vectors whose norm is off by more
/// than 1e-12; use normalized() for arbitrary nonzero input.
class Direction {
 public:
  explicit Direction(Vector u);
  static Direction normalized(const Vector& v);

  const Vector& vec() const noexcept { return u_; }
  Index dim() const noexcept { return u_.size(); }
  double operator[](Index i) const { return u_[i]; }

 private:
  Vector u_;
};

class RegressionDataset {
 public:
  RegressionDataset(Matrix x, Vector y);

  const Matrix& x() const noexcept { return x_; }
  const Vector& y() const noexcept { return y_; }
  Index size() const noexcept { return x_.rows(); }
  /// Number of covariates d (the coefficient has d + 1 entries).
  Index dim() const noexcept { return x_.cols(); }

 private:
  Matrix x_;
  Vector y_;
};

/// theta = (beta0, beta1).
class Coefficient {
 public:
  Coefficient(double beta0, Vector beta1);
  /// Builds from the stacked (d+1)-vector (beta0, beta1...).
  static Coefficient from_vector(const Vector& theta);

  double beta0() const noexcept { return beta0_; }
  const Vector& beta1() const noexcept { return beta1_; }
  Index dim() const noexcept { return beta1_.size(); }
  Vector as_vector() const;

 private:
  double beta0_;
  Vector beta1_;
};

/// Rows (1, x_i).
struct LiftedDesign {
  Matrix w;
};

/// z_i = r_i(theta) * (1, x_i). Regression depth of theta is the location
/// depth of the origin with respect to these rows.
struct TransformedCloud {
  Vector residuals;
  Matrix z;
  Coefficient theta;

  PointCloud cloud() const { return PointCloud(z); }
};

enum class Notion { halfspace, simplicial, projection, rayleigh, zonoid };
enum class Method { exact1d, exact2d, bruteforce, sampled, closedform, lp };

std::string_view to_string(Notion notion);
std::string_view to_string(Method method);
Notion parse_notion(std::string_view name);

struct HyperplaneWitness {
  double v0;
  Direction v1;
};

struct ZonoidCertificate {
  Vector lambda;
  double t_star;
};

using Witness = std::variant<std::monostate, Direction, HyperplaneWitness, ZonoidCertificate>;

struct DepthResult {
  double value = 0.0;
  Notion notion = Notion::halfspace;
  Method method = Method::exact1d;
  Witness witness;
  // Sampled and grid methods record how many directions were searched and
  // the seed used, so a caller can judge convergence.
  int num_directions = 0;
  std::uint64_t seed = 0;
};

LiftedDesign lift(const RegressionDataset& ds);
Vector residuals(const RegressionDataset& ds, const Coefficient& theta);
TransformedCloud transform_cloud(const RegressionDataset& ds, const Coefficient& theta);

/// Average of the two middle order statistics (equal for odd sizes).
double median1d(std::span<const double> v);
/// Raw median absolute deviation, no consistency constant.
double mad1d(std::span<const double> v);

/// Same as median1d but partially reorders the buffer instead of copying.
double median_inplace(std::span<double> v);

inline double median1d(const Vector& v) { return median1d(std::span<const double>(v.data(), v.size())); }
inline double mad1d(const Vector& v) { return mad1d(std::span<const double>(v.data(), v.size())); }

Vector project(const PointCloud& cloud, const Direction& u);

}  // namespace regdepth
