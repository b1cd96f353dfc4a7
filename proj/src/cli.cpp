#include "regdepth/cli.hpp"

#include <charconv>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "regdepth/estimate.hpp"
#include "regdepth/io.hpp"
#include "regdepth/regression_depth.hpp"
#include "regdepth/surface.hpp"

namespace regdepth {

using nlohmann::json;

namespace {

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string_view rest(text);
  for (;;) {
    const std::size_t comma = rest.find(',');
    std::string_view cell = rest.substr(0, comma);
    while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
    while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      throw InvalidArgument(std::string(what) + ": malformed number '" + std::string(cell) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) return out;
    rest.remove_prefix(comma + 1);
  }
}

json vec_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json witness_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, Direction>) {
          return {{"type", "direction"}, {"u", vec_json(x.vec())}};
        } else if constexpr (std::is_same_v<T, HyperplaneWitness>) {
          return {{"type", "hyperplane"}, {"v0", x.v0}, {"v1", vec_json(x.v1.vec())}};
        } else {
          return {{"type", "zonoid"}, {"t_star", x.t_star}, {"lambda", vec_json(x.lambda)}};
        }
      },
      w);
}

json result_json(const DepthResult& r) {
  json j{{"notion", std::string(to_string(r.notion))},
         {"method", std::string(to_string(r.method))},
         {"value", r.value},
         {"witness", witness_json(r.witness)}};
  if (r.num_directions > 0) j["num_directions"] = r.num_directions;
  if (r.method == Method::sampled) j["seed"] = r.seed;
  return j;
}

json theta_json(const Coefficient& c) { return vec_json(c.as_vector()); }

struct MethodFlags {
  std::string method = "auto";
  int dirs = 0;
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--method", method, "auto, exact1d, exact2d, bruteforce, sampled (closedform and lp mean auto)");
    app->add_option("--dirs", dirs, "directions for grid or sampled methods (0 = default)")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "seed for sampled directions");
  }

  MethodSpec spec() const {
    MethodSpec m;
    m.kind = method == "closedform" || method == "lp" ? MethodSpec::Kind::auto_ : parse_method_kind(method);
    m.num_directions = dirs;
    m.seed = seed;
    return m;
  }
};

RegressionDataset load_dataset(const std::string& path) {
  CsvData data = read_csv(path);
  if (auto* ds = std::get_if<RegressionDataset>(&data)) return std::move(*ds);
  throw InvalidArgument(path + ": expected header x1,...,xd,y");
}

PointCloud load_cloud(const std::string& path) {
  CsvData data = read_csv(path);
  if (auto* c = std::get_if<PointCloud>(&data)) return std::move(*c);
  throw InvalidArgument(path + ": expected header x1,...,xd without y");
}

Coefficient parse_theta(const std::string& text, const RegressionDataset& ds) {
  const std::vector<double> v = parse_list(text, "--theta");
  if (static_cast<Index>(v.size()) != ds.dim() + 1) {
    throw InvalidArgument("--theta needs " + std::to_string(ds.dim() + 1) + " values");
  }
  return Coefficient::from_vector(Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size())));
}

DepthResult location_depth(Notion notion, const PointCloud& cloud, const Vector& x, const MethodSpec& m) {
  switch (notion) {
    case Notion::halfspace: return halfspace_depth(cloud, x, m);
    case Notion::simplicial: return simplicial_depth(cloud, x, m);
    case Notion::projection: return projection_depth(cloud, x, m);
    case Notion::rayleigh: return rayleigh_depth(cloud, x, m);
    case Notion::zonoid: return zonoid_depth(cloud, x);
  }
  throw InvalidArgument("unknown notion");
}

AxisSpec axis(const std::vector<double>& v, std::size_t at) {
  const double count = v[at + 2];
  if (count != std::floor(count) || count < 2 || count > 1e6) throw InvalidArgument("--grid counts must be integers >= 2");
  return AxisSpec{v[at], v[at + 1], static_cast<int>(count)};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Statistical depth, regression depth, deepest fits and depth surfaces", "regdepth"};
  app.require_subcommand(1);
  std::string notion_name = "halfspace";
  std::string data_path;
  MethodFlags mf;
  int threads = 0;

  // gen
  SyntheticConfig sc;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "draw the synthetic y = beta0 + beta1 x + e dataset");
  gen->add_option("--n", sc.n, "sample size")->check(CLI::PositiveNumber);
  gen->add_option("--beta0", sc.beta0);
  gen->add_option("--beta1", sc.beta1);
  gen->add_option("--noise-var", sc.noise_var, "variance of e")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", sc.seed);
  gen->add_option("--out", gen_out, "CSV path (stdout when omitted)");

  // depth
  std::string point_text;
  CLI::App* depth = app.add_subcommand("depth", "location depth of a point");
  depth->add_option("--notion", notion_name)->required();
  depth->add_option("--data", data_path, "CSV with header x1,...,xd")->required();
  depth->add_option("--point", point_text, "comma-separated coordinates")->required();
  mf.add(depth);

  // rdepth
  std::string theta_text;
  CLI::App* rdepth = app.add_subcommand("rdepth", "regression depth of a coefficient");
  rdepth->add_option("--notion", notion_name)->required();
  rdepth->add_option("--data", data_path, "CSV with header x1,...,xd,y")->required();
  rdepth->add_option("--theta", theta_text, "beta0,beta1,...")->required();
  mf.add(rdepth);

  // fit
  std::string box_text = "0,1,0,1";
  SearchSpec search;
  CLI::App* fit = app.add_subcommand("fit", "deepest fit by coarse-to-fine grid search (one covariate)");
  fit->add_option("--notion", notion_name)->required();
  fit->add_option("--data", data_path)->required();
  fit->add_option("--box", box_text, "lo0,hi0,lo1,hi1");
  fit->add_option("--coarse", search.coarse)->check(CLI::Range(3, 100000));
  fit->add_option("--refine", search.refine_levels)->check(CLI::NonNegativeNumber);
  fit->add_option("--threads", threads)->check(CLI::NonNegativeNumber);
  mf.add(fit);

  // surface
  std::string grid_text;
  std::string levels_text;
  std::string surface_out;
  CLI::App* surface = app.add_subcommand("surface", "depth surface over (beta0, beta1) and its contours");
  surface->add_option("--notion", notion_name)->required();
  surface->add_option("--data", data_path)->required();
  surface->add_option("--grid", grid_text, "lo0,hi0,count0,lo1,hi1,count1 (default [0,1]^2, 41 or 101 nodes)");
  surface->add_option("--levels", levels_text, "ascending comma-separated contour levels");
  surface->add_option("--out", surface_out, "JSON path (stdout when omitted)");
  surface->add_option("--threads", threads)->check(CLI::NonNegativeNumber);
  mf.add(surface);

  // diagnose rays
  std::string center_text;
  RaySpec rs{Coefficient(0.0, Vector::Zero(1))};
  CLI::App* diagnose = app.add_subcommand("diagnose", "diagnostics");
  diagnose->require_subcommand(1);
  CLI::App* rays = diagnose->add_subcommand("rays", "depth monotonicity along seeded rays");
  rays->add_option("--notion", notion_name)->required();
  rays->add_option("--data", data_path)->required();
  rays->add_option("--center", center_text, "beta0,beta1,... (default: least squares fit)");
  rays->add_option("--rays", rs.num_rays)->check(CLI::PositiveNumber);
  rays->add_option("--radius", rs.radius)->check(CLI::PositiveNumber);
  rays->add_option("--steps", rs.steps)->check(CLI::Range(2, 1000000));
  rays->add_option("--seed", rs.seed);
  rays->add_option("--tolerance", rs.tolerance)->check(CLI::NonNegativeNumber);
  rays->add_option("--method", mf.method);
  rays->add_option("--dirs", mf.dirs)->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const RegressionDataset ds = gen_synthetic(sc);
      if (gen_out.empty()) {
        out << format_csv(ds);
      } else {
        write_csv(ds, gen_out);
        emit(out, json{{"out", gen_out}, {"n", ds.size()}, {"seed", sc.seed}});
      }
      return 0;
    }

    const Notion notion = parse_notion(notion_name);
    const MethodSpec method = mf.spec();

    if (depth->parsed()) {
      const PointCloud cloud = load_cloud(data_path);
      const std::vector<double> p = parse_list(point_text, "--point");
      if (static_cast<Index>(p.size()) != cloud.dim()) {
        throw InvalidArgument("--point needs " + std::to_string(cloud.dim()) + " coordinates");
      }
      const Vector x = Eigen::Map<const Vector>(p.data(), static_cast<Index>(p.size()));
      emit(out, result_json(location_depth(notion, cloud, x, method)));
      return 0;
    }

    if (rdepth->parsed()) {
      const RegressionDataset ds = load_dataset(data_path);
      const Coefficient theta = parse_theta(theta_text, ds);
      json j = result_json(regression_depth(ds, notion, theta, method));
      j["theta"] = theta_json(theta);
      emit(out, j);
      return 0;
    }

    if (fit->parsed()) {
      const RegressionDataset ds = load_dataset(data_path);
      const std::vector<double> b = parse_list(box_text, "--box");
      if (b.size() != 4) throw InvalidArgument("--box needs lo0,hi0,lo1,hi1");
      search.box = {{{b[0], b[1]}, {b[2], b[3]}}};
      search.notion = notion;
      search.method = method;
      search.threads = threads;
      const FitResult r = deepest_fit(ds, search);
      if (r.on_boundary) err << "warning: deepest fit lies on the search box boundary; consider a larger --box\n";
      json cells = json::array();
      for (const GridCell& c : r.argmax_cells) {
        cells.push_back({{"center", theta_json(c.center)}, {"half_width", {c.half_width0, c.half_width1}}});
      }
      emit(out, json{{"theta_star", theta_json(r.theta_star)},
                     {"depth", result_json(r.depth)},
                     {"level_best", r.level_best},
                     {"on_boundary", r.on_boundary},
                     {"argmax_cells", std::move(cells)}});
      return 0;
    }

    if (surface->parsed()) {
      const RegressionDataset ds = load_dataset(data_path);
      GridSpec g = default_grid(notion);
      if (!grid_text.empty()) {
        const std::vector<double> v = parse_list(grid_text, "--grid");
        if (v.size() != 6) throw InvalidArgument("--grid needs lo0,hi0,count0,lo1,hi1,count1");
        g = GridSpec{axis(v, 0), axis(v, 3)};
      }
      const std::vector<double> levels = levels_text.empty() ? default_levels(notion) : parse_list(levels_text, "--levels");
      const DepthSurface s = eval_surface(ds, notion, method, g, threads);
      const ContourSet contours = contour_lines(s, levels);
      if (surface_out.empty()) {
        out << surface_json(s, contours);
      } else {
        write_surface_json(s, contours, surface_out);
        json counts = json::array();
        for (const auto& lines : contours.polylines) counts.push_back(lines.size());
        emit(out, json{{"out", surface_out},
                       {"notion", std::string(to_string(s.notion))},
                       {"method", std::string(to_string(s.method))},
                       {"max_value", s.values.maxCoeff()},
                       {"levels", contours.levels},
                       {"polylines_per_level", std::move(counts)}});
      }
      return 0;
    }

    if (rays->parsed()) {
      const RegressionDataset ds = load_dataset(data_path);
      rs.center = center_text.empty() ? ols(ds) : parse_theta(center_text, ds);
      const RayReport rep = ray_monotonicity(ds, notion, method, rs);
      json details = json::array();
      for (const RayViolation& v : rep.details) details.push_back({{"ray", v.ray}, {"step", v.step}, {"increase", v.increase}});
      emit(out, json{{"notion", std::string(to_string(notion))},
                     {"center", theta_json(rs.center)},
                     {"rays", rep.num_rays},
                     {"steps", rep.steps},
                     {"radius", rs.radius},
                     {"seed", rs.seed},
                     {"tolerance", rep.tolerance},
                     {"violations", rep.violations},
                     {"worst_increase", rep.worst_increase},
                     {"details", std::move(details)}});
      return 0;
    }
    err << app.help();
    return 1;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace regdepth
