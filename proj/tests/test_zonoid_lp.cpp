#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "regdepth/zonoid_lp.hpp"

using namespace regdepth;

namespace {
Matrix gaussian(std::mt19937_64& rng, int n, int d) {
  std::normal_distribution<double> nd;
  Matrix m(n, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) m(i, k) = nd(rng);
  }
  return m;
}

void check_valid(const ZonoidLpProblem& p, const ZonoidLpSolution& s) {
  REQUIRE(s.feasible);
  const CertificateCheck c = check_certificate(p, s.certificate);
  CHECK(c.reconstruction_error <= 1e-9 * (1.0 + p.x.norm()));
  CHECK(c.sum_error <= 1e-9);
  CHECK(c.min_lambda >= -1e-12);
  CHECK(c.max_lambda <= s.certificate.t_star + 1e-12);
}
}  // namespace

TEST_CASE("column mean gives uniform weights") {
  std::mt19937_64 rng(1);
  const PointCloud c(gaussian(rng, 9, 2));
  const Vector mean = c.points().colwise().mean().transpose();
  const ZonoidLpProblem p = ZonoidLpProblem::from_cloud(c, mean);
  const ZonoidLpSolution s = solve_zonoid_lp(p);
  check_valid(p, s);
  CHECK(s.certificate.t_star == doctest::Approx(1.0 / 9).epsilon(1e-9));
  CHECK((s.certificate.lambda.array() - 1.0 / 9).abs().maxCoeff() < 1e-9);
}

TEST_CASE("two-point cloud has a unique solution") {
  Matrix a(2, 1);
  a << 0, 1;
  const ZonoidLpProblem p = ZonoidLpProblem::from_cloud(PointCloud(a), Vector::Constant(1, 0.75));
  const ZonoidLpSolution s = solve_zonoid_lp(p);
  check_valid(p, s);
  CHECK(s.certificate.t_star == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(s.certificate.lambda[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("a hull vertex forces all mass onto itself") {
  std::mt19937_64 rng(2);
  Matrix pts = gaussian(rng, 12, 2);
  Index arg = 0;
  pts.col(0).maxCoeff(&arg);
  const Vector x = pts.row(arg).transpose();
  const ZonoidLpProblem p = ZonoidLpProblem::from_cloud(PointCloud(pts), x);
  const ZonoidLpSolution s = solve_zonoid_lp(p);
  check_valid(p, s);
  CHECK(s.certificate.t_star == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s.certificate.lambda[arg] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("optimum matches basis enumeration on small instances") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-0.8, 0.8);
  for (int rep = 0; rep < 150; ++rep) {
    const int d = 1 + rep % 2;
    const int n = d + 2 + rep % (7 - d);
    const Matrix pts = gaussian(rng, n, d);
    Vector x(d);
    for (int k = 0; k < d; ++k) x[k] = uni(rng);
    const double want = oracle::zonoid_depth_enum(pts, x);
    const ZonoidLpProblem p = ZonoidLpProblem::from_cloud(PointCloud(pts), x);
    const ZonoidLpSolution s = solve_zonoid_lp(p);
    if (want == 0.0) {
      CHECK_FALSE(s.feasible);
      continue;
    }
    check_valid(p, s);
    CHECK(1.0 / (n * s.certificate.t_star) == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("infeasible problems return a separating hyperplane") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 1 + rep % 3;
    const Matrix pts = gaussian(rng, 10, d);
    Vector x = Vector::Constant(d, 4.0 + rep);
    const ZonoidLpProblem p = ZonoidLpProblem::from_cloud(PointCloud(pts), x);
    const ZonoidLpSolution s = solve_zonoid_lp(p);
    REQUIRE_FALSE(s.feasible);
    CHECK(std::abs(s.separating_direction.norm() - 1.0) < 1e-12);
    CHECK(s.separation > 0.0);
    for (Index i = 0; i < pts.rows(); ++i) {
      CHECK(s.separating_direction.dot(pts.row(i).transpose() - x) >= s.separation - 1e-12);
    }
  }
}

TEST_CASE("duplicates, determinism and hull classification") {
  Matrix pts(5, 2);
  pts << 0, 0, 0, 0, 1, 0, 0, 1, 1, 0;
  const ZonoidLpProblem p = ZonoidLpProblem::from_cloud(PointCloud(pts), (Vector(2) << 0.2, 0.2).finished());
  const ZonoidLpSolution a = solve_zonoid_lp(p);
  const ZonoidLpSolution b = solve_zonoid_lp(p);
  check_valid(p, a);
  CHECK(a.certificate.lambda == b.certificate.lambda);
  CHECK(a.iterations == b.iterations);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(-2.5, 2.5);
  int checked = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 1 + rep % 2;
    const Matrix cloud = gaussian(rng, 8 + rep % 20, d);
    Vector x(d);
    for (int k = 0; k < d; ++k) x[k] = uni(rng);
    const int side = oracle::hull_membership(cloud, x);
    if (side == 0) continue;
    ++checked;
    CHECK(solve_zonoid_lp(ZonoidLpProblem::from_cloud(PointCloud(cloud), x)).feasible == (side > 0));
  }
  CHECK(checked > 150);
}

TEST_CASE("invalid problems are rejected") {
  Matrix a(2, 3);
  a.setZero();
  CHECK_THROWS_AS(solve_zonoid_lp(ZonoidLpProblem{a, Vector::Zero(3)}), InvalidArgument);
}
