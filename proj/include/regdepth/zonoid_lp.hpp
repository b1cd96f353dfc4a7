#pragma once

#include "regdepth/core.hpp"

namespace regdepth {

/// min t  s.t.  sum_i lambda_i a_i = x,  sum_i lambda_i = 1,  0 <= lambda_i <= t.
/// Columns of `a` are the sample points.
struct ZonoidLpProblem {
  Matrix a;  // d x n
  Vector x;  // d

  ZonoidLpProblem(Matrix a_in, Vector x_in);
  static ZonoidLpProblem from_cloud(const PointCloud& cloud, const Vector& x);
  Index dim() const noexcept { return a.rows(); }
  Index size() const noexcept { return a.cols(); }
};

struct ZonoidLpSolution {
  bool feasible = false;
  /// Set when feasible.
  ZonoidCertificate certificate{Vector(), 0.0};
  /// Set when infeasible: unit normal u with u'(a_i - x) >= separation > 0
  /// for every column, i.e. a hyperplane strictly separating x from the hull.
  Vector separating_direction;
  double separation = 0.0;
  int iterations = 0;
};

struct ZonoidLpOptions {
  /// 0 selects 50 * (n + d).
  int max_iterations = 0;
};

/// Dense bounded-variable primal simplex with Bland's rule. Throws
/// SolverFailure when the iteration cap is hit; infeasibility (x outside the
/// convex hull) is a normal result, never an exception.
ZonoidLpSolution solve_zonoid_lp(const ZonoidLpProblem& p, const ZonoidLpOptions& opts = {});

/// Residual of sum_i lambda_i a_i - x in the max norm, the certificate's sum
/// error and min entry; used by tests and by zonoid_depth's self-check.
struct CertificateCheck {
  double reconstruction_error;
  double sum_error;
  double min_lambda;
  double max_lambda;
};
CertificateCheck check_certificate(const ZonoidLpProblem& p, const ZonoidCertificate& cert);

}  // namespace regdepth
