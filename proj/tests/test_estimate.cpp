#include <doctest.h>

#include <cmath>

#include "regdepth/estimate.hpp"
#include "regdepth/io.hpp"

using namespace regdepth;

namespace {
Coefficient th(double b0, double b1) { return Coefficient(b0, Vector::Constant(1, b1)); }

double linf(const Coefficient& a, const Coefficient& b) { return (a.as_vector() - b.as_vector()).lpNorm<Eigen::Infinity>(); }

const RegressionDataset& shipped_data() {
  static const RegressionDataset ds = gen_synthetic(SyntheticConfig{});
  return ds;
}
}  // namespace

TEST_CASE("ols") {
  Matrix x(4, 1);
  x << -1, 0, 2, 5;
  const RegressionDataset exact(x, Vector(3.0 - 2.0 * x.col(0).array()));
  const Coefficient c = ols(exact);
  CHECK(std::abs(c.beta0() - 3.0) < 1e-10);
  CHECK(std::abs(c.beta1()[0] + 2.0) < 1e-10);

  const RegressionDataset& ds = shipped_data();
  const Coefficient hat = ols(ds);
  CHECK(linf(hat, th(0.5, 0.5)) <= 0.1);
  CHECK(std::abs(zrd(ds, hat).value - 1.0) <= 1e-9);
  for (double b : {-3.0, 0.7, 10.0}) {
    const Coefficient scaled = ols(RegressionDataset(ds.x(), b * ds.y()));
    CHECK((scaled.as_vector() - b * hat.as_vector()).norm() <= 1e-10);
  }

  CHECK_THROWS_AS(ols(RegressionDataset(Matrix::Constant(5, 1, 2.0), Vector::Ones(5))), SingularMatrix);
  CHECK_THROWS_AS(ols(RegressionDataset(Matrix::Constant(1, 1, 2.0), Vector::Ones(1))), SingularMatrix);
}

TEST_CASE("deepest fit for the closed-form maximizers") {
  const RegressionDataset& ds = shipped_data();
  const Coefficient hat = ols(ds);
  for (Notion n : {Notion::zonoid, Notion::rayleigh}) {
    SearchSpec spec;
    spec.notion = n;
    spec.coarse = 21;
    spec.refine_levels = 9;  // finest spacing ~2e-7, fine enough for the 1e-6 depth bound
    const FitResult r = deepest_fit(ds, spec);
    const double cell = 1.0 / 20 / std::pow(4.0, 9);
    CHECK(std::abs(r.theta_star.beta0() - hat.beta0()) <= cell);
    CHECK(std::abs(r.theta_star.beta1()[0] - hat.beta1()[0]) <= cell);
    CHECK(r.depth.value >= 1 - 1e-6);
    CHECK(r.level_best.size() == 10);
    for (std::size_t k = 1; k < r.level_best.size(); ++k) CHECK(r.level_best[k] >= r.level_best[k - 1]);
    CHECK_FALSE(r.on_boundary);
  }
}

TEST_CASE("deepest fit invariants") {
  const RegressionDataset& ds = shipped_data();
  SearchSpec spec;
  spec.notion = Notion::halfspace;
  spec.coarse = 15;
  spec.refine_levels = 2;
  const FitResult r = deepest_fit(ds, spec);
  CHECK(std::abs(r.depth.value - hrd(ds, r.theta_star).value) <= 1e-12);
  REQUIRE_FALSE(r.argmax_cells.empty());
  double s0 = 0.0;
  double s1 = 0.0;
  for (const GridCell& c : r.argmax_cells) {
    s0 += c.center.beta0();
    s1 += c.center.beta1()[0];
  }
  const double k = static_cast<double>(r.argmax_cells.size());
  CHECK(std::abs(r.theta_star.beta0() - s0 / k) <= 1e-12);
  CHECK(std::abs(r.theta_star.beta1()[0] - s1 / k) <= 1e-12);
  for (std::size_t i = 1; i < r.level_best.size(); ++i) CHECK(r.level_best[i] >= r.level_best[i - 1]);
  CHECK(linf(r.theta_star, th(0.5, 0.5)) <= 0.15);

  const FitResult again = deepest_fit(ds, spec);
  CHECK(again.theta_star.as_vector() == r.theta_star.as_vector());
  SearchSpec serial = spec;
  serial.threads = 1;
  CHECK(deepest_fit(ds, serial).theta_star.as_vector() == r.theta_star.as_vector());
}

TEST_CASE("deepest fit flags a box that misses the maximizer") {
  SearchSpec spec;
  spec.notion = Notion::rayleigh;
  spec.box = {{{2.0, 3.0}, {2.0, 3.0}}};
  spec.coarse = 5;
  spec.refine_levels = 1;
  CHECK(deepest_fit(shipped_data(), spec).on_boundary);
}

TEST_CASE("deepest fit rejects bad specs") {
  const RegressionDataset& ds = shipped_data();
  SearchSpec bad;
  bad.coarse = 2;
  CHECK_THROWS_AS(deepest_fit(ds, bad), InvalidArgument);
  SearchSpec box;
  box.box = {{{1.0, 0.0}, {0.0, 1.0}}};
  CHECK_THROWS_AS(deepest_fit(ds, box), InvalidArgument);
  CHECK_THROWS_AS(deepest_fit(RegressionDataset(Matrix::Zero(4, 2), Vector::Zero(4)), SearchSpec{}), InvalidArgument);
}
