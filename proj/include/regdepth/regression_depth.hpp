#pragma once

// Regression depth of a coefficient theta for the linear model
// y = beta0 + beta1'x + e. Every notion except the projection and Rayleigh
// variants is the location depth of the origin with respect to the
// transformed cloud z_i = r_i(theta) (1, x_i). Halfspace and simplicial
// depth are evaluated on sign(r_i) (1, x_i), which has the same depth of the
// origin but avoids rounding in the products.

#include <memory>
#include <optional>

#include "regdepth/core.hpp"
#include "regdepth/location_depth.hpp"

namespace regdepth {

/// Rows y_i (1, x_i): the theta-free cloud whose MAD scales the projection
/// regression outlyingness.
struct PrdDenominatorCache {
  Matrix yw;

  static PrdDenominatorCache build(const RegressionDataset& ds);
};

struct RegressionRayleighSummary {
  Vector g;     // mean of y_i w_i
  Matrix gbar;  // mean of w_i w_i'
  Matrix s;     // covariance of y_i w_i, divisor n
};

/// Halfspace regression depth as the halfspace depth of the origin w.r.t.
/// the transformed cloud (exact2d when d = 1).
DepthResult hrd(const RegressionDataset& ds, const Coefficient& theta, const MethodSpec& m = {});

/// Halfspace regression depth straight from the hyperplane form: infimum over
/// (v0, v1) of the smaller of the two closed one-sided residual counts.
/// Requires d = 1; witness is the minimizing HyperplaneWitness.
DepthResult hrd_direct(const RegressionDataset& ds, const Coefficient& theta);

/// min of the two one-sided counts at a fixed hyperplane, divided by n.
double hrd_direct_objective(const RegressionDataset& ds, const Coefficient& theta, const HyperplaneWitness& h);

DepthResult srd(const RegressionDataset& ds, const Coefficient& theta, const MethodSpec& m = {});

/// |Med(u'z_i(theta))| / MAD(u'y_i w_i), u in R^{d+1}.
double prd_objective(const RegressionDataset& ds, const Coefficient& theta, const Direction& u);

/// 1 / (1 + sup_u prd_objective). The supremum runs over a finite direction
/// set (2048-angle grid plus golden-section refinement when d = 1, seeded
/// sampled directions otherwise), so the reported value is an upper bound
/// on the exact depth.
DepthResult prd(const RegressionDataset& ds, const Coefficient& theta, const MethodSpec& m = {});

RegressionRayleighSummary regression_rayleigh_summary(const RegressionDataset& ds);

/// sqrt(m' S^-1 m) with m(theta) = g - gbar theta. Requires S positive definite.
double rrd_outlyingness(const RegressionRayleighSummary& summary, const Coefficient& theta);
/// |u'm(theta)| / sqrt(u'Su) at a fixed direction.
double rrd_objective(const RegressionRayleighSummary& summary, const Coefficient& theta, const Direction& u);

DepthResult rrd(const RegressionDataset& ds, const Coefficient& theta,
                const std::optional<MethodSpec>& fallback = MethodSpec::of(MethodSpec::Kind::auto_));

DepthResult zrd(const RegressionDataset& ds, const Coefficient& theta);

/// Evaluates one notion at many coefficients, building the per-dataset
/// caches (PRD denominators, Rayleigh moments) once. Immutable after
/// construction and safe to share across threads; results are bitwise equal
/// to the free functions above.
class RegressionDepth {
 public:
  RegressionDepth(RegressionDataset ds, Notion notion, MethodSpec method = {});
  ~RegressionDepth();
  RegressionDepth(RegressionDepth&&) noexcept;
  RegressionDepth& operator=(RegressionDepth&&) noexcept;

  DepthResult operator()(const Coefficient& theta) const;

  Notion notion() const noexcept { return notion_; }
  const MethodSpec& method() const noexcept { return method_; }
  const RegressionDataset& dataset() const noexcept { return ds_; }

 private:
  struct Cache;
  RegressionDataset ds_;
  Notion notion_;
  MethodSpec method_;
  std::unique_ptr<const Cache> cache_;
};

DepthResult regression_depth(const RegressionDataset& ds, Notion notion, const Coefficient& theta,
                             const MethodSpec& m = {});

}  // namespace regdepth
