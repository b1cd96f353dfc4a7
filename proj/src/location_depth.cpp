#include "regdepth/location_depth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "directional.hpp"
#include "predicates.hpp"
#include "regdepth/random.hpp"
#include "regdepth/zonoid_lp.hpp"

namespace regdepth {

using Kind = MethodSpec::Kind;

MethodSpec::Kind parse_method_kind(std::string_view name) {
  if (name == "auto") return Kind::auto_;
  if (name == "exact1d") return Kind::exact1d;
  if (name == "exact2d") return Kind::exact2d;
  if (name == "bruteforce") return Kind::bruteforce;
  if (name == "sampled") return Kind::sampled;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(MethodSpec::Kind kind) {
  switch (kind) {
    case Kind::auto_: return "auto";
    case Kind::exact1d: return "exact1d";
    case Kind::exact2d: return "exact2d";
    case Kind::bruteforce: return "bruteforce";
    case Kind::sampled: return "sampled";
  }
  return "unknown";
}

namespace {

constexpr double kBruteForceLimit = 1e7;

struct Vec2 {
  double x;
  double y;
};

void check_query(const PointCloud& cloud, const Vector& x) {
  if (x.size() != cloud.dim()) throw InvalidArgument("query point dimension does not match cloud");
  if (!x.allFinite()) throw InvalidArgument("query point is not finite");
}

void require_dim(const PointCloud& cloud, Index dim, Kind kind) {
  if (cloud.dim() != dim) {
    throw InvalidArgument(std::string(to_string(kind)) + " requires dimension " + std::to_string(dim));
  }
}

std::vector<Vec2> centered_planar(const PointCloud& cloud, const Vector& x) {
  std::vector<Vec2> v(static_cast<std::size_t>(cloud.size()));
  for (Index i = 0; i < cloud.size(); ++i) {
    v[static_cast<std::size_t>(i)] = {cloud.points()(i, 0) - x[0], cloud.points()(i, 1) - x[1]};
  }
  return v;
}

bool is_zero(const Vec2& v) { return v.x == 0.0 && v.y == 0.0; }

// Upper half-plane (angle in [0, pi)) first, then by exact cross product.
bool angle_less(const Vec2& a, const Vec2& b) {
  const bool ha = a.y < 0.0 || (a.y == 0.0 && a.x < 0.0);
  const bool hb = b.y < 0.0 || (b.y == 0.0 && b.x < 0.0);
  if (ha != hb) return hb;
  return detail::cross_sign(a.x, a.y, b.x, b.y) > 0;
}

bool same_ray(const Vec2& a, const Vec2& b) {
  return detail::cross_sign(a.x, a.y, b.x, b.y) == 0 && detail::dot_sign(a.x, a.y, b.x, b.y) > 0;
}

// b lies at counter-clockwise angle in (0, pi] from a.
bool in_upper_halfturn(const Vec2& a, const Vec2& b) {
  const int c = detail::cross_sign(a.x, a.y, b.x, b.y);
  return c > 0 || (c == 0 && detail::dot_sign(a.x, a.y, b.x, b.y) < 0);
}

std::vector<Vec2> sorted_nonzero(const std::vector<Vec2>& v) {
  std::vector<Vec2> s;
  s.reserve(v.size());
  for (const Vec2& p : v) {
    if (!is_zero(p)) s.push_back(p);
  }
  std::stable_sort(s.begin(), s.end(), angle_less);
  return s;
}

// ---- halfspace ---------------------------------------------------------

struct PlanarHalfspace {
  long count;       // min over u of #{i : u'v_i <= 0}
  double witness_angle;
  bool has_witness;
};

// The open half-plane {u'v > 0} holding the most points is bounded by a
// line through the origin that can be rotated onto a data ray; its contents
// are then the points at angle (phi_j, phi_j + pi] or the complement
// (phi_j - pi, phi_j]. Exact predicates throughout.
PlanarHalfspace planar_halfspace_sweep(const std::vector<Vec2>& v) {
  const long n = static_cast<long>(v.size());
  const std::vector<Vec2> s = sorted_nonzero(v);
  const long m = static_cast<long>(s.size());
  if (m == 0) return {n, 0.0, false};

  // Group equal rays.
  std::vector<long> group_start;
  for (long i = 0; i < m; ++i) {
    if (i == 0 || !same_ray(s[static_cast<std::size_t>(i - 1)], s[static_cast<std::size_t>(i)])) group_start.push_back(i);
  }
  const long g = static_cast<long>(group_start.size());
  std::vector<long> mult(static_cast<std::size_t>(g));
  for (long k = 0; k < g; ++k) {
    const long end = k + 1 < g ? group_start[static_cast<std::size_t>(k + 1)] : m;
    mult[static_cast<std::size_t>(k)] = end - group_start[static_cast<std::size_t>(k)];
  }
  // prefix sums over the doubled group sequence
  std::vector<long> prefix(static_cast<std::size_t>(2 * g + 1), 0);
  for (long k = 0; k < 2 * g; ++k) prefix[static_cast<std::size_t>(k + 1)] = prefix[static_cast<std::size_t>(k)] + mult[static_cast<std::size_t>(k % g)];
  auto rep = [&](long k) -> const Vec2& { return s[static_cast<std::size_t>(group_start[static_cast<std::size_t>(k % g)])]; };

  long best = -1;
  long best_group = 0;
  bool best_is_complement = false;
  long e = 0;  // last doubled index inside (phi_k, phi_k + pi]
  for (long k = 0; k < g; ++k) {
    e = std::max(e, k);
    while (e + 1 < k + g && in_upper_halfturn(rep(k), rep(e + 1))) ++e;
    const long c = prefix[static_cast<std::size_t>(e + 1)] - prefix[static_cast<std::size_t>(k + 1)];
    if (c > best) {
      best = c;
      best_group = k;
      best_is_complement = false;
    }
    if (m - c > best) {
      best = m - c;
      best_group = k;
      best_is_complement = true;
    }
  }

  // Witness: boundary angle just past phi_j (or phi_j - pi), normal rotated by +pi/2.
  const Vec2& r = rep(best_group);
  double alpha0 = std::atan2(r.y, r.x) - (best_is_complement ? std::numbers::pi : 0.0);
  double gap = std::numbers::pi;
  for (const Vec2& p : s) {
    const double phi = std::atan2(p.y, p.x);
    for (double crit : {phi, phi - std::numbers::pi}) {
      double delta = std::remainder(crit - alpha0, 2.0 * std::numbers::pi);
      if (delta <= 0.0) delta += 2.0 * std::numbers::pi;
      if (delta > 1e-15 && delta < gap) gap = delta;
    }
  }
  return {n - best, alpha0 + gap / 2.0 + std::numbers::pi / 2.0, true};
}

long planar_halfspace_bruteforce(const std::vector<Vec2>& v) {
  const long n = static_cast<long>(v.size());
  const long m = static_cast<long>(std::count_if(v.begin(), v.end(), [](const Vec2& p) { return !is_zero(p); }));
  long best = 0;
  for (const Vec2& a : v) {
    if (is_zero(a)) continue;
    long c = 0;
    for (const Vec2& b : v) {
      if (!is_zero(b) && in_upper_halfturn(a, b)) ++c;
    }
    best = std::max({best, c, m - c});
  }
  return n - best;
}

// Direction whose closed-halfspace count matches `count`, scanning arc
// midpoints when the sweep's analytic witness is off by rounding.
Direction planar_witness(const PointCloud& cloud, const Vector& x, const PlanarHalfspace& sweep) {
  const double n = static_cast<double>(cloud.size());
  const double target = static_cast<double>(sweep.count) / n;
  Direction u(detail::unit_at_angle(sweep.witness_angle));
  if (halfspace_fraction(cloud, x, u) == target) return u;
  std::vector<double> crit;
  for (Index i = 0; i < cloud.size(); ++i) {
    const double dx = cloud.points()(i, 0) - x[0];
    const double dy = cloud.points()(i, 1) - x[1];
    if (dx == 0.0 && dy == 0.0) continue;
    const double phi = std::atan2(dy, dx);
    crit.push_back(std::remainder(phi + std::numbers::pi / 2.0, 2.0 * std::numbers::pi));
    crit.push_back(std::remainder(phi - std::numbers::pi / 2.0, 2.0 * std::numbers::pi));
  }
  std::sort(crit.begin(), crit.end());
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const double lo = crit[k];
    const double hi = k + 1 < crit.size() ? crit[k + 1] : crit[0] + 2.0 * std::numbers::pi;
    Direction cand(detail::unit_at_angle((lo + hi) / 2.0));
    if (halfspace_fraction(cloud, x, cand) == target) return cand;
  }
  return u;
}

// ---- simplicial --------------------------------------------------------

double choose(long n, long k) {
  if (k < 0 || n < k) return 0.0;
  double r = 1.0;
  for (long i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

// Closed triangle (a, b, c) contains the origin.
bool triangle_contains_origin(const Vec2& a, const Vec2& b, const Vec2& c) {
  const int s1 = detail::cross_sign(a.x, a.y, b.x, b.y);
  const int s2 = detail::cross_sign(b.x, b.y, c.x, c.y);
  const int s3 = detail::cross_sign(c.x, c.y, a.x, a.y);
  const bool pos = s1 > 0 || s2 > 0 || s3 > 0;
  const bool neg = s1 < 0 || s2 < 0 || s3 < 0;
  if (pos && neg) return false;
  if (pos || neg) return true;
  // all three on one line through the origin
  if (is_zero(a) || is_zero(b) || is_zero(c)) return true;
  return detail::dot_sign(a.x, a.y, b.x, b.y) <= 0 || detail::dot_sign(b.x, b.y, c.x, c.y) <= 0 ||
         detail::dot_sign(c.x, c.y, a.x, a.y) <= 0;
}

// Triangles missing the origin are exactly the triples inside an open
// half-plane; each is counted once from its first point in counter-clockwise
// order (ties on a ray broken by sorted position).
double planar_simplicial_sweep(const std::vector<Vec2>& v) {
  const long n = static_cast<long>(v.size());
  const std::vector<Vec2> s = sorted_nonzero(v);
  const long m = static_cast<long>(s.size());
  double missing = 0.0;
  long e = 0;
  auto in_window = [&](long p, long q) {
    const Vec2& a = s[static_cast<std::size_t>(p)];
    const Vec2& b = s[static_cast<std::size_t>(q % m)];
    const int c = detail::cross_sign(a.x, a.y, b.x, b.y);
    if (q < m) return c > 0 || (c == 0 && detail::dot_sign(a.x, a.y, b.x, b.y) > 0);
    return c > 0;
  };
  for (long p = 0; p < m; ++p) {
    e = std::max(e, p);
    while (e + 1 < p + m && in_window(p, e + 1)) ++e;
    const long h = e - p;
    missing += static_cast<double>(h) * static_cast<double>(h - 1) / 2.0;
  }
  return choose(n, 3) - missing;
}

double planar_simplicial_bruteforce(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  double count = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (triangle_contains_origin(v[i], v[j], v[k])) count += 1.0;
      }
    }
  }
  return count;
}

double linear_simplicial_count(const PointCloud& cloud, double x) {
  long lo = 0;
  long eq = 0;
  long hi = 0;
  for (Index i = 0; i < cloud.size(); ++i) {
    const double p = cloud.points()(i, 0);
    if (p < x) ++lo;
    else if (p > x) ++hi;
    else ++eq;
  }
  const long n = static_cast<long>(cloud.size());
  return static_cast<double>(lo) * static_cast<double>(hi) + static_cast<double>(eq) * static_cast<double>(n - eq) +
         choose(eq, 2);
}

// General dimension: barycentric solve, LP feasibility for flat simplices.
bool simplex_contains(const Matrix& verts, const Vector& x) {
  const Index d = verts.cols();
  Matrix sys(d + 1, d + 1);
  Vector rhs(d + 1);
  for (Index k = 0; k <= d; ++k) {
    sys.block(0, k, d, 1) = verts.row(k).transpose();
    sys(d, k) = 1.0;
  }
  rhs.head(d) = x;
  rhs[d] = 1.0;
  Eigen::FullPivLU<Matrix> lu(sys);
  lu.setThreshold(1e-12);
  if (lu.isInvertible()) {
    const Vector bary = lu.solve(rhs);
    return bary.minCoeff() >= -1e-12;
  }
  return solve_zonoid_lp(ZonoidLpProblem(verts.transpose(), x)).feasible;
}

double general_simplicial_count(const PointCloud& cloud, const Vector& x) {
  const Index n = cloud.size();
  const Index k = cloud.dim() + 1;
  std::vector<Index> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  Matrix verts(k, cloud.dim());
  double count = 0.0;
  while (true) {
    for (Index r = 0; r < k; ++r) verts.row(r) = cloud.point(idx[static_cast<std::size_t>(r)]);
    if (simplex_contains(verts, x)) count += 1.0;
    Index pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (Index r = pos + 1; r < k; ++r) idx[static_cast<std::size_t>(r)] = idx[static_cast<std::size_t>(r - 1)] + 1;
  }
  return count;
}

DepthResult make_result(double value, Notion notion, Method method) {
  DepthResult r;
  r.value = std::clamp(value, 0.0, 1.0);
  r.notion = notion;
  r.method = method;
  return r;
}

}  // namespace

double halfspace_fraction(const PointCloud& cloud, const Vector& x, const Direction& u) {
  check_query(cloud, x);
  if (u.dim() != cloud.dim()) throw InvalidArgument("direction dimension does not match cloud");
  const double ux = u.vec().dot(x);
  long c = 0;
  for (Index i = 0; i < cloud.size(); ++i) {
    if (cloud.point(i).dot(u.vec()) <= ux) ++c;
  }
  return static_cast<double>(c) / static_cast<double>(cloud.size());
}

DepthResult halfspace_depth(const PointCloud& cloud, const Vector& x, const MethodSpec& m) {
  check_query(cloud, x);
  const double n = static_cast<double>(cloud.size());
  Kind kind = m.kind;
  if (kind == Kind::auto_) kind = cloud.dim() == 1 ? Kind::exact1d : cloud.dim() == 2 ? Kind::exact2d : Kind::sampled;

  switch (kind) {
    case Kind::exact1d: {
      require_dim(cloud, 1, kind);
      long below = 0;
      long above = 0;
      for (Index i = 0; i < cloud.size(); ++i) {
        const double p = cloud.points()(i, 0);
        if (p <= x[0]) ++below;
        if (p >= x[0]) ++above;
      }
      DepthResult r = make_result(static_cast<double>(std::min(below, above)) / n, Notion::halfspace, Method::exact1d);
      r.witness = Direction(Vector::Constant(1, below <= above ? 1.0 : -1.0));
      r.num_directions = 2;
      return r;
    }
    case Kind::exact2d: {
      require_dim(cloud, 2, kind);
      const PlanarHalfspace sweep = planar_halfspace_sweep(centered_planar(cloud, x));
      DepthResult r = make_result(static_cast<double>(sweep.count) / n, Notion::halfspace, Method::exact2d);
      r.witness = sweep.has_witness ? planar_witness(cloud, x, sweep) : Direction(Vector::Unit(2, 0));
      return r;
    }
    case Kind::bruteforce: {
      if (cloud.dim() == 1) {
        DepthResult r = halfspace_depth(cloud, x, MethodSpec::of(Kind::exact1d));
        r.method = Method::bruteforce;
        return r;
      }
      require_dim(cloud, 2, kind);
      const long count = planar_halfspace_bruteforce(centered_planar(cloud, x));
      return make_result(static_cast<double>(count) / n, Notion::halfspace, Method::bruteforce);
    }
    case Kind::sampled:
    case Kind::auto_: {
      const int count = m.num_directions > 0 ? m.num_directions : kDefaultSampledDirections;
      double best = 2.0;
      Vector best_u;
      for (const Direction& u : sample_directions(cloud.dim(), count, m.seed)) {
        const double f = halfspace_fraction(cloud, x, u);
        if (f < best) {
          best = f;
          best_u = u.vec();
        }
      }
      DepthResult r = make_result(best, Notion::halfspace, Method::sampled);
      r.witness = Direction(best_u);
      r.num_directions = count;
      r.seed = m.seed;
      return r;
    }
  }
  throw InvalidArgument("unsupported method");
}

DepthResult simplicial_depth(const PointCloud& cloud, const Vector& x, const MethodSpec& m) {
  check_query(cloud, x);
  const long n = static_cast<long>(cloud.size());
  const long k = static_cast<long>(cloud.dim()) + 1;
  Kind kind = m.kind;
  if (kind == Kind::auto_) kind = cloud.dim() == 1 ? Kind::exact1d : cloud.dim() == 2 ? Kind::exact2d : Kind::bruteforce;
  if (kind == Kind::sampled) throw InvalidArgument("simplicial depth has no sampled method");
  if (kind == Kind::exact1d) require_dim(cloud, 1, kind);
  if (kind == Kind::exact2d) require_dim(cloud, 2, kind);
  const Method method = kind == Kind::exact1d ? Method::exact1d : kind == Kind::exact2d ? Method::exact2d : Method::bruteforce;
  if (n < k) return make_result(0.0, Notion::simplicial, method);

  const double total = choose(n, k);
  double count = 0.0;
  switch (kind) {
    case Kind::exact1d:
      count = linear_simplicial_count(cloud, x[0]);
      break;
    case Kind::exact2d:
      count = planar_simplicial_sweep(centered_planar(cloud, x));
      break;
    default:
      if (total > kBruteForceLimit) {
        throw InvalidArgument("brute-force simplicial depth would evaluate more than 1e7 simplices");
      }
      if (cloud.dim() == 1) count = linear_simplicial_count(cloud, x[0]);
      else if (cloud.dim() == 2) count = planar_simplicial_bruteforce(centered_planar(cloud, x));
      else count = general_simplicial_count(cloud, x);
      break;
  }
  return make_result(count / total, Notion::simplicial, method);
}

double projection_outlyingness(const PointCloud& cloud, const Vector& x, const Direction& u) {
  Vector proj = project(cloud, u);
  std::vector<double> buf(proj.data(), proj.data() + proj.size());
  const double med = median_inplace(buf);
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = std::abs(proj[static_cast<Index>(i)] - med);
  const double mad = median_inplace(buf);
  return outlyingness_ratio(u.vec().dot(x) - med, mad);
}

DepthResult projection_depth(const PointCloud& cloud, const Vector& x, const MethodSpec& m) {
  check_query(cloud, x);
  std::vector<double> proj(static_cast<std::size_t>(cloud.size()));
  std::vector<double> dev(proj.size());
  auto objective = [&](const Vector& u) {
    for (Index i = 0; i < cloud.size(); ++i) proj[static_cast<std::size_t>(i)] = cloud.point(i).dot(u);
    dev = proj;
    const double med = median_inplace(dev);
    for (std::size_t i = 0; i < proj.size(); ++i) dev[i] = std::abs(proj[i] - med);
    const double mad = median_inplace(dev);
    return outlyingness_ratio(u.dot(x) - med, mad);
  };
  const detail::DirectionalSup sup = detail::directional_sup(cloud.dim(), m, objective);
  DepthResult r = make_result(depth_from_outlyingness(sup.value), Notion::projection, sup.method);
  r.witness = Direction::normalized(sup.direction);
  r.num_directions = sup.num_directions;
  r.seed = sup.method == Method::sampled ? m.seed : 0;
  return r;
}

RayleighSummary rayleigh_summary(const PointCloud& cloud) {
  if (cloud.size() < 2) throw InvalidArgument("Rayleigh summary needs at least two points");
  const double n = static_cast<double>(cloud.size());
  Vector mean = cloud.points().colwise().sum().transpose() / n;
  Matrix centered = cloud.points().rowwise() - mean.transpose();
  Matrix cov = (centered.transpose() * centered) / n;
  cov = (0.5 * (cov + cov.transpose())).eval();
  return RayleighSummary{std::move(mean), std::move(cov)};
}

double rayleigh_outlyingness(const RayleighSummary& summary, const Vector& x, const Direction& u) {
  return outlyingness_ratio(u.vec().dot(x - summary.mean), quadratic_scale(summary.cov, u.vec()));
}

namespace {

bool positive_definite(const Matrix& s) {
  const double tr = s.trace();
  if (!(tr > 0.0)) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > 1e-10 * tr;
}

}  // namespace

DepthResult rayleigh_depth(const PointCloud& cloud, const Vector& x, const std::optional<MethodSpec>& fallback) {
  check_query(cloud, x);
  const RayleighSummary summary = rayleigh_summary(cloud);
  const Vector diff = x - summary.mean;
  if (positive_definite(summary.cov)) {
    Eigen::LLT<Matrix> llt(summary.cov);
    const Vector sol = llt.solve(diff);
    const double o = std::sqrt(std::max(0.0, diff.dot(sol)));
    DepthResult r = make_result(depth_from_outlyingness(o), Notion::rayleigh, Method::closedform);
    if (sol.norm() > 0.0) r.witness = Direction::normalized(sol);
    return r;
  }
  if (!fallback) throw SingularMatrix("covariance is not positive definite and no fallback was requested");
  auto objective = [&](const Vector& u) {
    return outlyingness_ratio(u.dot(diff), quadratic_scale(summary.cov, u));
  };
  const detail::DirectionalSup sup = detail::directional_sup(cloud.dim(), *fallback, objective);
  DepthResult r = make_result(depth_from_outlyingness(sup.value), Notion::rayleigh, sup.method);
  r.witness = Direction::normalized(sup.direction);
  r.num_directions = sup.num_directions;
  r.seed = sup.method == Method::sampled ? fallback->seed : 0;
  return r;
}

DepthResult zonoid_depth(const PointCloud& cloud, const Vector& x) {
  check_query(cloud, x);
  const ZonoidLpSolution sol = solve_zonoid_lp(ZonoidLpProblem::from_cloud(cloud, x));
  if (!sol.feasible) return make_result(0.0, Notion::zonoid, Method::lp);
  DepthResult r =
      make_result(1.0 / (static_cast<double>(cloud.size()) * sol.certificate.t_star), Notion::zonoid, Method::lp);
  r.witness = sol.certificate;
  return r;
}

}  // namespace regdepth
