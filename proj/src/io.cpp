#include "regdepth/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "regdepth/random.hpp"

namespace regdepth {

using nlohmann::json;

RegressionDataset gen_synthetic(const SyntheticConfig& c) {
  if (c.n < 1) throw InvalidArgument("n must be at least 1");
  if (!(c.noise_var >= 0.0) || !std::isfinite(c.noise_var)) throw InvalidArgument("noise variance must be finite and >= 0");
  NormalGenerator gen(c.seed);
  const double sigma = std::sqrt(c.noise_var);
  Matrix x(c.n, 1);
  Vector y(c.n);
  for (Index i = 0; i < c.n; ++i) {
    x(i, 0) = gen.normal();
    const double eps = sigma * gen.normal();
    y[i] = c.beta0 + c.beta1 * x(i, 0) + eps;
  }
  return RegressionDataset(std::move(x), std::move(y));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw Error("write failed for " + path.string());
}

// ---- CSV ---------------------------------------------------------------

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_cell(std::string_view cell, std::size_t line_no, std::size_t col) {
  cell = trim(cell);
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw ParseError(line_no, "column " + std::to_string(col + 1) + ": not a finite number: '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

CsvData parse_csv(const std::string& text) {
  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    if (rest.substr(0, 3) == "\xEF\xBB\xBF") rest.remove_prefix(3);
    while (!rest.empty()) {
      const std::size_t nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError(1, "empty file");

  const auto header = split_fields(lines[0]);
  std::size_t d = 0;
  bool has_y = false;
  for (std::size_t k = 0; k < header.size(); ++k) {
    const std::string_view h = trim(header[k]);
    if (k + 1 == header.size() && h == "y" && k > 0) {
      has_y = true;
    } else if (h == "x" + std::to_string(k + 1)) {
      ++d;
    } else {
      throw ParseError(1, "unknown header field '" + std::string(h) + "'; expected x1,...,xd[,y]");
    }
  }
  if (d == 0) throw ParseError(1, "header needs at least one covariate column x1");
  const std::size_t cols = d + (has_y ? 1 : 0);

  const Index n = static_cast<Index>(lines.size() - 1);
  if (n == 0) throw ParseError(1, "no data rows");
  Matrix x(n, static_cast<Index>(d));
  Vector y(has_y ? n : 0);
  for (Index i = 0; i < n; ++i) {
    const std::size_t line_no = static_cast<std::size_t>(i) + 2;
    const auto fields = split_fields(lines[static_cast<std::size_t>(i) + 1]);
    if (fields.size() != cols) {
      throw ParseError(line_no, "row has " + std::to_string(fields.size()) + " fields, header has " + std::to_string(cols));
    }
    for (std::size_t k = 0; k < d; ++k) x(i, static_cast<Index>(k)) = parse_cell(fields[k], line_no, k);
    if (has_y) y[i] = parse_cell(fields[d], line_no, d);
  }
  if (has_y) return RegressionDataset(std::move(x), std::move(y));
  return PointCloud(std::move(x));
}

CsvData read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("float formatting failed");
  return std::string(buf, ptr);
}

namespace {

std::string format_rows(const Matrix& x, const Vector* y) {
  std::string out;
  for (Index k = 0; k < x.cols(); ++k) out += (k ? ",x" : "x") + std::to_string(k + 1);
  if (y) out += ",y";
  out += '\n';
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index k = 0; k < x.cols(); ++k) {
      if (k) out += ',';
      out += format_double(x(i, k));
    }
    if (y) out += ',' + format_double((*y)[i]);
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_csv(const RegressionDataset& ds) { return format_rows(ds.x(), &ds.y()); }
std::string format_csv(const PointCloud& cloud) { return format_rows(cloud.points(), nullptr); }
void write_csv(const RegressionDataset& ds, const std::filesystem::path& path) { write_text(path, format_csv(ds)); }
void write_csv(const PointCloud& cloud, const std::filesystem::path& path) { write_text(path, format_csv(cloud)); }

// ---- surface JSON ------------------------------------------------------

Method parse_method(std::string_view name) {
  for (Method m : {Method::exact1d, Method::exact2d, Method::bruteforce, Method::sampled, Method::closedform,
                   Method::lp}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

namespace {

json axis_json(const AxisSpec& a) { return json::array({a.lo, a.hi, a.count}); }

AxisSpec axis_from(const json& j) {
  if (!j.is_array() || j.size() != 3 || !j[2].is_number_integer()) {
    throw InvalidArgument("grid axis must be [lo, hi, count]");
  }
  return AxisSpec{j[0].get<double>(), j[1].get<double>(), j[2].get<int>()};
}

}  // namespace

std::string surface_json(const DepthSurface& s, const ContourSet& contours, int indent) {
  if (s.values.rows() != s.grid.beta0.count || s.values.cols() != s.grid.beta1.count) {
    throw InvalidArgument("surface values do not match the grid");
  }
  if (contours.polylines.size() != contours.levels.size()) throw InvalidArgument("one polyline list per level expected");
  json j;
  j["notion"] = std::string(to_string(s.notion));
  j["method"] = std::string(to_string(s.method));
  j["grid"] = {{"beta0", axis_json(s.grid.beta0)}, {"beta1", axis_json(s.grid.beta1)}};
  json values = json::array();
  for (Index i = 0; i < s.values.rows(); ++i) {
    for (Index k = 0; k < s.values.cols(); ++k) values.push_back(s.values(i, k));
  }
  j["values"] = std::move(values);
  j["levels"] = contours.levels;
  json lv = json::array();
  for (const auto& lines : contours.polylines) {
    json level = json::array();
    for (const Polyline& pl : lines) {
      json line = json::array();
      for (const auto& p : pl) line.push_back({p[0], p[1]});
      level.push_back(std::move(line));
    }
    lv.push_back(std::move(level));
  }
  j["contours"] = std::move(lv);
  return j.dump(indent) + "\n";
}

void write_surface_json(const DepthSurface& s, const ContourSet& contours, const std::filesystem::path& path) {
  write_text(path, surface_json(s, contours));
}

SurfaceFile parse_surface_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    SurfaceFile f;
    f.surface.notion = parse_notion(j.at("notion").get<std::string>());
    f.surface.method = parse_method(j.at("method").get<std::string>());
    f.surface.grid.beta0 = axis_from(j.at("grid").at("beta0"));
    f.surface.grid.beta1 = axis_from(j.at("grid").at("beta1"));
    f.surface.grid.validate();
    const json& values = j.at("values");
    const Index c0 = f.surface.grid.beta0.count;
    const Index c1 = f.surface.grid.beta1.count;
    if (!values.is_array() || static_cast<Index>(values.size()) != c0 * c1) {
      throw InvalidArgument("values array does not match the grid");
    }
    f.surface.values.resize(c0, c1);
    for (Index i = 0; i < c0; ++i) {
      for (Index k = 0; k < c1; ++k) f.surface.values(i, k) = values[static_cast<std::size_t>(i * c1 + k)].get<double>();
    }
    f.contours.levels = j.at("levels").get<std::vector<double>>();
    for (const json& level : j.at("contours")) {
      std::vector<Polyline> lines;
      for (const json& line : level) {
        Polyline pl;
        for (const json& p : line) pl.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        lines.push_back(std::move(pl));
      }
      f.contours.polylines.push_back(std::move(lines));
    }
    if (f.contours.polylines.size() != f.contours.levels.size()) {
      throw InvalidArgument("contours must have one entry per level");
    }
    return f;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed surface JSON: ") + e.what());
  }
}

SurfaceFile read_surface_json(const std::filesystem::path& path) { return parse_surface_json(read_text(path)); }

}  // namespace regdepth
