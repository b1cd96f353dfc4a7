#include <doctest.h>

#include <cmath>
#include <vector>

#include "regdepth/core.hpp"
#include "regdepth/random.hpp"

using namespace regdepth;

namespace {
Matrix col(std::initializer_list<double> v) {
  Matrix m(static_cast<Index>(v.size()), 1);
  Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}
Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}
}  // namespace

TEST_CASE("lift prepends a column of ones") {
  const RegressionDataset ds(col({2, 3}), vec({0, 0}));
  const Matrix w = lift(ds).w;
  CHECK(w.rows() == 2);
  CHECK(w(0, 0) == 1.0);
  CHECK(w(0, 1) == 2.0);
  CHECK(w(1, 0) == 1.0);
  CHECK(w(1, 1) == 3.0);

  Matrix x2 = Matrix::Zero(1, 2);
  const Matrix w2 = lift(RegressionDataset(x2, vec({1}))).w;
  CHECK(w2.cols() == 3);
  CHECK(w2(0, 0) == 1.0);
  CHECK(w2(0, 1) == 0.0);
  CHECK(w2(0, 2) == 0.0);
}

TEST_CASE("construction rejects invalid shapes and values") {
  CHECK_THROWS_AS(RegressionDataset(Matrix(2, 0), vec({1, 2})), InvalidArgument);
  CHECK_THROWS_AS(RegressionDataset(col({1, 2}), vec({1})), InvalidArgument);
  CHECK_THROWS_AS(RegressionDataset(col({1, NAN}), vec({1, 2})), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(Matrix(0, 2)), InvalidArgument);
  CHECK_THROWS_AS(PointCloud(col({INFINITY})), InvalidArgument);
  CHECK_THROWS_AS(Coefficient(NAN, vec({1})), InvalidArgument);
}

TEST_CASE("residuals") {
  const RegressionDataset ds(col({0, 1, 2}), vec({0, 1, 2}));
  CHECK(residuals(ds, Coefficient(0, vec({1}))) == vec({0, 0, 0}));
  CHECK(residuals(RegressionDataset(col({0}), vec({5})), Coefficient(0, vec({0}))) == vec({5}));
  CHECK(residuals(RegressionDataset(col({1, 2}), vec({1, 2})), Coefficient(1, vec({0.5}))) == vec({-0.5, 0}));
  CHECK_THROWS_AS(residuals(ds, Coefficient(0, vec({1, 2}))), InvalidArgument);
}

TEST_CASE("transform_cloud") {
  const RegressionDataset fit(col({0, 1, 2}), vec({0, 1, 2}));
  CHECK(transform_cloud(fit, Coefficient(0, vec({1}))).z.isZero(0.0));

  const TransformedCloud t = transform_cloud(RegressionDataset(col({2}), vec({5})), Coefficient(1, vec({1})));
  CHECK(t.residuals[0] == 2.0);
  CHECK(t.z(0, 0) == 2.0);
  CHECK(t.z(0, 1) == 4.0);

  // response scaling scales z exactly when the residuals scale exactly
  const RegressionDataset ds(col({0.3, -1.7, 2.2}), vec({0.1, 0.9, -0.4}));
  const Coefficient theta(0.25, vec({0.75}));
  for (double b : {-2.0, 0.5, 4.0}) {
    const RegressionDataset scaled(ds.x(), b * ds.y());
    const Matrix z = transform_cloud(ds, theta).z;
    const Matrix zb = transform_cloud(scaled, Coefficient(b * theta.beta0(), b * theta.beta1())).z;
    CHECK(zb == b * z);
  }
}

TEST_CASE("median and MAD") {
  CHECK(median1d(vec({1, 2, 3})) == 2.0);
  CHECK(median1d(vec({1, 2, 3, 4})) == 2.5);
  CHECK(median1d(vec({5})) == 5.0);
  CHECK(median1d(vec({4, 1, 3, 2})) == 2.5);
  CHECK(mad1d(vec({1, 2, 3})) == 1.0);
  CHECK(mad1d(vec({7, 7, 7})) == 0.0);
  CHECK(mad1d(vec({1, 2, 4, 7})) == 1.5);
  CHECK_THROWS_AS(median1d(Vector()), InvalidArgument);

  const Vector v = vec({0.3, -2.0, 5.5, 1.25, 0.0, 9.0, -3.5});
  CHECK(median1d(Vector(v.array() + 10.0)) == doctest::Approx(median1d(v) + 10.0).epsilon(1e-12));
  CHECK(mad1d(Vector(v.array() + 10.0)) == doctest::Approx(mad1d(v)).epsilon(1e-12));
  CHECK(mad1d(Vector(-3.0 * v)) == doctest::Approx(3.0 * mad1d(v)).epsilon(1e-12));
  Vector p = v.reverse();
  CHECK(median1d(p) == median1d(v));
}

TEST_CASE("direction and project") {
  CHECK_THROWS_AS(Direction(vec({1, 1})), InvalidArgument);
  CHECK_THROWS_AS(Direction::normalized(vec({0, 0})), InvalidArgument);
  const Direction u = Direction::normalized(vec({1, 1}));
  CHECK(std::abs(u.vec().norm() - 1.0) < 1e-15);

  Matrix pts(2, 2);
  pts << 1, 2, 3, 4;
  const PointCloud cloud(pts);
  CHECK(project(cloud, Direction(vec({1, 0}))) == vec({1, 3}));
  CHECK(project(cloud, Direction(vec({-1, 0}))) == vec({-1, -3}));
  Matrix one(1, 2);
  one << 1, 1;
  CHECK(project(PointCloud(one), u)[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("coefficient stacking and names") {
  const Coefficient c = Coefficient::from_vector(vec({1, 2, 3}));
  CHECK(c.beta0() == 1.0);
  CHECK(c.dim() == 2);
  CHECK(c.as_vector() == vec({1, 2, 3}));
  for (Notion n : {Notion::halfspace, Notion::simplicial, Notion::projection, Notion::rayleigh, Notion::zonoid}) {
    CHECK(parse_notion(to_string(n)) == n);
  }
  CHECK_THROWS_AS(parse_notion("tukey2"), InvalidArgument);
}

TEST_CASE("seeded normal stream is reproducible and roughly standard") {
  NormalGenerator a(42);
  NormalGenerator b(42);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);

  const auto d1 = sample_directions(3, 10, 9);
  const auto d2 = sample_directions(3, 10, 9);
  REQUIRE(d1.size() == 10);
  for (std::size_t k = 0; k < d1.size(); ++k) {
    CHECK(d1[k].vec() == d2[k].vec());
    CHECK(std::abs(d1[k].vec().norm() - 1.0) < 1e-12);
  }
}
