#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "regdepth/estimate.hpp"
#include "regdepth/io.hpp"
#include "regdepth/location_depth.hpp"
#include "regdepth/regression_depth.hpp"
#include "regdepth/surface.hpp"
#include "regdepth/zonoid_lp.hpp"

namespace py = pybind11;
using namespace regdepth;

namespace {

MethodSpec method_spec(const std::string& method, int dirs, std::uint64_t seed) {
  MethodSpec m;
  m.kind = parse_method_kind(method);
  m.num_directions = dirs;
  m.seed = seed;
  return m;
}

RegressionDataset dataset(const Matrix& x, const Vector& y) { return RegressionDataset(x, y); }

Matrix as_columns(const Matrix& x) {
  // a 1-d numpy array arrives as a single row; treat it as one covariate
  return x.rows() == 1 && x.cols() > 1 ? Matrix(x.transpose()) : x;
}

py::object witness(const Witness& w) {
  return std::visit(
      [](const auto& v) -> py::object {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return py::none();
        } else if constexpr (std::is_same_v<T, Direction>) {
          return py::dict(py::arg("type") = "direction", py::arg("u") = v.vec());
        } else if constexpr (std::is_same_v<T, HyperplaneWitness>) {
          return py::dict(py::arg("type") = "hyperplane", py::arg("v0") = v.v0, py::arg("v1") = v.v1.vec());
        } else {
          return py::dict(py::arg("type") = "zonoid", py::arg("t_star") = v.t_star, py::arg("lambda") = v.lambda);
        }
      },
      w);
}

py::dict result(const DepthResult& r) {
  return py::dict(py::arg("value") = r.value, py::arg("notion") = std::string(to_string(r.notion)),
                  py::arg("method") = std::string(to_string(r.method)), py::arg("witness") = witness(r.witness),
                  py::arg("num_directions") = r.num_directions, py::arg("seed") = r.seed);
}

}  // namespace

PYBIND11_MODULE(_regdepth, m) {
  m.doc() = "Location and regression depth, deepest fits and depth surfaces";

  // later registrations are tried first, so the base class goes first
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);
  py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "gen_synthetic",
      [](Index n, double beta0, double beta1, double noise_var, std::uint64_t seed) {
        const RegressionDataset ds = gen_synthetic(SyntheticConfig{n, beta0, beta1, noise_var, seed});
        return py::make_tuple(Vector(ds.x().col(0)), ds.y());
      },
      py::arg("n") = 300, py::arg("beta0") = 0.5, py::arg("beta1") = 0.5, py::arg("noise_var") = 0.2,
      py::arg("seed") = 2018, "Returns (x, y) for y = beta0 + beta1 x + e with e ~ N(0, noise_var).");

  m.def(
      "location_depth",
      [](const Matrix& points, const Vector& x, const std::string& notion, const std::string& method, int dirs,
         std::uint64_t seed) {
        const PointCloud cloud(as_columns(points));
        const MethodSpec ms = method_spec(method, dirs, seed);
        switch (parse_notion(notion)) {
          case Notion::halfspace: return result(halfspace_depth(cloud, x, ms));
          case Notion::simplicial: return result(simplicial_depth(cloud, x, ms));
          case Notion::projection: return result(projection_depth(cloud, x, ms));
          case Notion::rayleigh: return result(rayleigh_depth(cloud, x, ms));
          case Notion::zonoid: return result(zonoid_depth(cloud, x));
        }
        throw InvalidArgument("unknown notion");
      },
      py::arg("points"), py::arg("x"), py::arg("notion") = "halfspace", py::arg("method") = "auto",
      py::arg("dirs") = 0, py::arg("seed") = 0);

  m.def(
      "regression_depth",
      [](const Matrix& x, const Vector& y, const Vector& theta, const std::string& notion, const std::string& method,
         int dirs, std::uint64_t seed) {
        return result(regression_depth(dataset(as_columns(x), y), parse_notion(notion), Coefficient::from_vector(theta),
                                       method_spec(method, dirs, seed)));
      },
      py::arg("x"), py::arg("y"), py::arg("theta"), py::arg("notion") = "halfspace", py::arg("method") = "auto",
      py::arg("dirs") = 0, py::arg("seed") = 0);

  m.def(
      "ols", [](const Matrix& x, const Vector& y) { return ols(dataset(as_columns(x), y)).as_vector(); },
      py::arg("x"), py::arg("y"));

  m.def(
      "deepest_fit",
      [](const Matrix& x, const Vector& y, const std::string& notion, std::array<double, 4> box, int coarse,
         int refine, const std::string& method, int threads) {
        SearchSpec s;
        s.box = {{{box[0], box[1]}, {box[2], box[3]}}};
        s.coarse = coarse;
        s.refine_levels = refine;
        s.notion = parse_notion(notion);
        s.method = method_spec(method, 0, 0);
        s.threads = threads;
        const FitResult r = deepest_fit(dataset(as_columns(x), y), s);
        return py::dict(py::arg("theta_star") = r.theta_star.as_vector(), py::arg("depth") = result(r.depth),
                        py::arg("level_best") = r.level_best, py::arg("on_boundary") = r.on_boundary);
      },
      py::arg("x"), py::arg("y"), py::arg("notion") = "halfspace", py::arg("box") = std::array<double, 4>{0, 1, 0, 1},
      py::arg("coarse") = 41, py::arg("refine") = 3, py::arg("method") = "auto", py::arg("threads") = 0);

  m.def(
      "surface",
      [](const Matrix& x, const Vector& y, const std::string& notion, std::optional<std::array<double, 6>> grid,
         std::optional<std::vector<double>> levels, const std::string& method, int threads) {
        const Notion nt = parse_notion(notion);
        GridSpec g = default_grid(nt);
        if (grid) {
          const auto& v = *grid;
          g = GridSpec{{v[0], v[1], static_cast<int>(v[2])}, {v[3], v[4], static_cast<int>(v[5])}};
        }
        const DepthSurface s = eval_surface(dataset(as_columns(x), y), nt, method_spec(method, 0, 0), g, threads);
        const ContourSet c = contour_lines(s, levels ? *levels : default_levels(nt));
        return py::dict(py::arg("values") = s.values, py::arg("method") = std::string(to_string(s.method)),
                        py::arg("levels") = c.levels, py::arg("contours") = c.polylines,
                        py::arg("json") = surface_json(s, c));
      },
      py::arg("x"), py::arg("y"), py::arg("notion") = "rayleigh", py::arg("grid") = py::none(),
      py::arg("levels") = py::none(), py::arg("method") = "auto", py::arg("threads") = 0);

  m.def(
      "zonoid_lp",
      [](const Matrix& points, const Vector& x) {
        const ZonoidLpSolution s = solve_zonoid_lp(ZonoidLpProblem::from_cloud(PointCloud(as_columns(points)), x));
        py::dict d(py::arg("feasible") = s.feasible, py::arg("iterations") = s.iterations);
        if (s.feasible) {
          d["lambda"] = s.certificate.lambda;
          d["t_star"] = s.certificate.t_star;
        } else {
          d["separating_direction"] = s.separating_direction;
          d["separation"] = s.separation;
        }
        return d;
      },
      py::arg("points"), py::arg("x"));
}
