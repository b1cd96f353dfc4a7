#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "regdepth/io.hpp"
#include "regdepth/location_depth.hpp"

using namespace regdepth;
using Kind = MethodSpec::Kind;

namespace {
PointCloud line_cloud(std::initializer_list<double> v) {
  Matrix m(static_cast<Index>(v.size()), 1);
  Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return PointCloud(m);
}
Vector v1(double a) { return Vector::Constant(1, a); }
Vector v2(double a, double b) { return (Vector(2) << a, b).finished(); }

Matrix gaussian(std::mt19937_64& rng, int n, int d) {
  std::normal_distribution<double> nd;
  Matrix m(n, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < d; ++k) m(i, k) = nd(rng);
  }
  return m;
}
}  // namespace

TEST_CASE("halfspace depth examples") {
  const PointCloud c = line_cloud({1, 2, 3});
  const DepthResult r = halfspace_depth(c, v1(2), MethodSpec::of(Kind::exact1d));
  CHECK(r.value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.method == Method::exact1d);
  CHECK(halfspace_depth(c, v1(0)).value == 0.0);

  Matrix cross(4, 2);
  cross << 1, 0, -1, 0, 0, 1, 0, -1;
  const DepthResult r2 = halfspace_depth(PointCloud(cross), v2(0, 0), MethodSpec::of(Kind::exact2d));
  CHECK(r2.value == 0.5);
  CHECK(r2.method == Method::exact2d);
  CHECK(halfspace_depth(PointCloud(cross), v2(0, 0), MethodSpec::of(Kind::bruteforce)).value == 0.5);
  CHECK_THROWS_AS(halfspace_depth(PointCloud(cross), v2(0, 0), MethodSpec::of(Kind::exact1d)), InvalidArgument);
  CHECK_THROWS_AS(halfspace_depth(PointCloud(cross), v1(0)), InvalidArgument);
}

TEST_CASE("halfspace witnesses reproduce the value") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    const PointCloud c(gaussian(rng, 15, 2));
    const Vector x = v2(0.1 * rep - 1.0, 0.3);
    const DepthResult r = halfspace_depth(c, x);
    REQUIRE(std::holds_alternative<Direction>(r.witness));
    CHECK(std::abs(halfspace_fraction(c, x, std::get<Direction>(r.witness)) - r.value) < 1e-9);
  }
}

TEST_CASE("halfspace exact2d matches critical-direction oracle on integer clouds") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    Matrix pts = oracle::integer_cloud(rng, 5 + rep % 20, 4);
    Vector x = v2(std::round(pts(0, 0) / 2), std::round(pts(1, 1) / 2));
    if (rep % 3 == 0) pts.row(2) = x.transpose();
    const PointCloud c(pts);
    const long count = oracle::halfspace_count_2d(pts, x);
    CHECK(halfspace_depth(c, x, MethodSpec::of(Kind::exact2d)).value == static_cast<double>(count) / pts.rows());
    CHECK(halfspace_depth(c, x, MethodSpec::of(Kind::bruteforce)).value == static_cast<double>(count) / pts.rows());
  }
}

TEST_CASE("sampled halfspace depth is an upper bound and reproducible") {
  std::mt19937_64 rng(5);
  const PointCloud c(gaussian(rng, 40, 2));
  const Vector x = v2(0.2, -0.1);
  const double exact = halfspace_depth(c, x).value;
  const DepthResult s1 = halfspace_depth(c, x, MethodSpec::sampled(500, 17));
  const DepthResult s2 = halfspace_depth(c, x, MethodSpec::sampled(500, 17));
  CHECK(s1.value >= exact);
  CHECK(s1.value == s2.value);
  CHECK(s1.method == Method::sampled);
  CHECK(s1.num_directions == 500);
  CHECK(s1.seed == 17);
  const PointCloud c3(gaussian(rng, 30, 3));
  CHECK(halfspace_depth(c3, Vector::Zero(3)).method == Method::sampled);
}

TEST_CASE("simplicial depth examples") {
  CHECK(simplicial_depth(line_cloud({1, 2, 3}), v1(2)).value == 1.0);
  Matrix tri(3, 2);
  tri << 0, 0, 1, 0, 0, 1;
  CHECK(simplicial_depth(PointCloud(tri), v2(0.25, 0.25)).value == 1.0);
  CHECK(simplicial_depth(PointCloud(tri), v2(5, 5)).value == 0.0);
  CHECK(simplicial_depth(PointCloud(tri), v2(0.5, 0.5)).value == 1.0);  // on an edge
  CHECK(simplicial_depth(line_cloud({1}), v1(1)).value == 0.0);          // no simplex exists
  CHECK_THROWS_AS(simplicial_depth(PointCloud(tri), v2(0, 0), MethodSpec::of(Kind::sampled)), InvalidArgument);
}

TEST_CASE("simplicial exact2d matches brute force and the integer oracle") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 4 + rep;
    Matrix pts = oracle::integer_cloud(rng, n, 3);
    const Vector x = v2(pts(0, 0), rep % 2 ? pts(0, 1) : 0.0);
    if (rep % 4 == 0) pts.row(n - 1) = x.transpose();
    const PointCloud c(pts);
    const double total = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
    const double want = static_cast<double>(oracle::simplicial_count_2d(pts, x)) / total;
    CHECK(simplicial_depth(c, x, MethodSpec::of(Kind::exact2d)).value == want);
    CHECK(simplicial_depth(c, x, MethodSpec::of(Kind::bruteforce)).value == want);
  }
}

TEST_CASE("simplicial depth in three dimensions") {
  Matrix tet(4, 3);
  tet << 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1;
  CHECK(simplicial_depth(PointCloud(tet), (Vector(3) << 0.1, 0.1, 0.1).finished()).value == 1.0);
  CHECK(simplicial_depth(PointCloud(tet), (Vector(3) << 1, 1, 1).finished()).value == 0.0);
}

TEST_CASE("projection depth examples") {
  const PointCloud c = line_cloud({1, 2, 3});
  CHECK(projection_depth(c, v1(2)).value == 1.0);
  CHECK(projection_depth(c, v1(3)).value == 0.5);
  CHECK(projection_depth(line_cloud({4, 4, 4}), v1(5)).value == 0.0);
  CHECK(projection_depth(line_cloud({4, 4, 4}), v1(4)).value == 1.0);
  CHECK_THROWS_AS(projection_depth(c, v1(2), MethodSpec::of(Kind::exact2d)), InvalidArgument);
}

TEST_CASE("projection grid refinement never decreases the outlyingness") {
  std::mt19937_64 rng(8);
  const PointCloud c(gaussian(rng, 25, 2));
  const Vector x = v2(0.7, -0.4);
  double prev = 2.0;
  for (int dirs : {16, 32, 64, 128, 256}) {
    MethodSpec m = MethodSpec::of(Kind::bruteforce);
    m.num_directions = dirs;
    m.refine = false;
    const double v = projection_depth(c, x, m).value;
    CHECK(v <= prev);
    prev = v;
  }
  const DepthResult r = projection_depth(c, x);
  REQUIRE(std::holds_alternative<Direction>(r.witness));
  const double o = projection_outlyingness(c, x, std::get<Direction>(r.witness));
  CHECK(std::abs(depth_from_outlyingness(o) - r.value) < 1e-9);
  CHECK(r.value <= prev);
}

TEST_CASE("rayleigh summary and depth") {
  const RayleighSummary s = rayleigh_summary(line_cloud({0, 2}));
  CHECK(s.mean[0] == 1.0);
  CHECK(s.cov(0, 0) == 1.0);
  CHECK(rayleigh_summary(line_cloud({3, 3, 3})).cov.isZero(0.0));
  CHECK(rayleigh_depth(line_cloud({0, 2}), v1(0)).value == 0.5);
  CHECK(rayleigh_depth(line_cloud({0, 2}), v1(1)).value == 1.0);

  std::mt19937_64 rng(4);
  const Matrix pts = gaussian(rng, 30, 2);
  const PointCloud c(pts);
  const RayleighSummary rs = rayleigh_summary(c);
  CHECK(rayleigh_depth(c, rs.mean).value == doctest::Approx(1.0).epsilon(1e-12));

  Matrix a(2, 2);
  a << 2, 0.5, -1, 1;
  const Vector b = v2(3, -1);
  const Matrix moved = (pts * a.transpose()).rowwise() + b.transpose();
  const RayleighSummary ms = rayleigh_summary(PointCloud(moved));
  CHECK((ms.mean - (a * rs.mean + b)).norm() < 1e-12);
  CHECK((ms.cov - a * rs.cov * a.transpose()).norm() < 1e-12);

  // closed form vs the angle-grid oracle, and linear outlyingness along rays
  for (int rep = 0; rep < 10; ++rep) {
    const Vector x = v2(0.5 * rep - 2, 1 - 0.3 * rep);
    const double closed = 1.0 / rayleigh_depth(c, x).value - 1.0;
    const double grid = oracle::rayleigh_grid_sup(rs.cov, x - rs.mean, 10000);
    CHECK(std::abs(closed - grid) <= 1e-6 * closed);
    const double at1 = 1.0 / rayleigh_depth(c, rs.mean + (x - rs.mean)).value - 1.0;
    for (double lam : {0.0, 0.25, 0.5, 1.0, 3.0}) {
      const double o = 1.0 / rayleigh_depth(c, rs.mean + lam * (x - rs.mean)).value - 1.0;
      CHECK(std::abs(o - lam * at1) < 1e-9);
    }
    CHECK(std::abs(rayleigh_depth(PointCloud(moved), a * x + b).value - rayleigh_depth(c, x).value) < 1e-9);
  }
}

TEST_CASE("rayleigh fallback on singular covariance") {
  Matrix pts(3, 2);
  pts << 0, 0, 1, 1, 2, 2;
  const PointCloud c(pts);
  CHECK_THROWS_AS(rayleigh_depth(c, v2(1, 0), std::nullopt), SingularMatrix);
  const DepthResult r = rayleigh_depth(c, v2(1, 0));
  CHECK(r.value == 0.0);  // off the support line: c / 0
  CHECK(r.method != Method::closedform);
  CHECK(rayleigh_depth(c, v2(1, 1)).value == doctest::Approx(1.0));
}

TEST_CASE("zonoid depth examples") {
  CHECK(zonoid_depth(line_cloud({0, 1}), v1(0.75)).value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(zonoid_depth(line_cloud({0, 1, 5}), v1(2)).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(zonoid_depth(line_cloud({0, 1}), v1(1.5)).value == 0.0);
  const DepthResult r = zonoid_depth(line_cloud({0, 1}), v1(0.75));
  REQUIRE(std::holds_alternative<ZonoidCertificate>(r.witness));
  const auto& cert = std::get<ZonoidCertificate>(r.witness);
  CHECK(cert.lambda[0] == doctest::Approx(0.25));
  CHECK(cert.lambda[1] == doctest::Approx(0.75));
  CHECK(r.method == Method::lp);
}

TEST_CASE("affine invariance of the exact depths") {
  std::mt19937_64 rng(12);
  Matrix a(2, 2);
  a << 2, 0, 0.5, 4;  // dyadic, so the map is exact in floating point
  const Vector b = v2(-8, 0.25);
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix pts = oracle::integer_cloud(rng, 12, 5);
    const Vector x = v2(rep % 3, -(rep % 2));
    const Matrix moved = (pts * a.transpose()).rowwise() + b.transpose();
    const Vector mx = a * x + b;
    CHECK(halfspace_depth(PointCloud(pts), x).value == halfspace_depth(PointCloud(moved), mx).value);
    CHECK(simplicial_depth(PointCloud(pts), x).value == simplicial_depth(PointCloud(moved), mx).value);
    CHECK(std::abs(zonoid_depth(PointCloud(pts), x).value - zonoid_depth(PointCloud(moved), mx).value) < 1e-9);
  }
}

TEST_CASE("depth vanishes far outside the data") {
  const RegressionDataset ds = gen_synthetic(SyntheticConfig{});
  Matrix pts(ds.size(), 2);
  pts.col(0) = ds.x().col(0);
  pts.col(1) = ds.y();
  const PointCloud c(pts);
  const double radius = pts.rowwise().norm().maxCoeff();
  const Vector far = v2(1e6 * radius, 1e6 * radius);
  CHECK(halfspace_depth(c, far).value == 0.0);
  CHECK(simplicial_depth(c, far).value == 0.0);
  CHECK(zonoid_depth(c, far).value == 0.0);
  CHECK(projection_depth(c, far).value <= 1e-3);
  CHECK(rayleigh_depth(c, far).value <= 1e-3);
}

TEST_CASE("dimension mismatches are rejected") {
  const PointCloud c = line_cloud({1, 2, 3});
  CHECK_THROWS_AS(halfspace_depth(c, v2(0, 0)), InvalidArgument);
  CHECK_THROWS_AS(zonoid_depth(c, v2(0, 0)), InvalidArgument);
  CHECK_THROWS_AS(rayleigh_depth(c, v2(0, 0)), InvalidArgument);
}
