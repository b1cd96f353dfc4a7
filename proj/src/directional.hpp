#pragma once

// Supremum of a direction-dependent objective over the unit sphere, shared by
// the projection-type depths. d = 1 is exact (u = +1 and u = -1); in the
// plane a deterministic angular grid over [0, pi) is used (objectives are
// assumed even in u) followed by golden-section refinement; otherwise seeded
// uniform directions.

#include <cmath>
#include <numbers>

#include "regdepth/core.hpp"
#include "regdepth/location_depth.hpp"
#include "regdepth/random.hpp"

namespace regdepth::detail {

struct DirectionalSup {
  double value = 0.0;
  Vector direction;
  Method method = Method::exact1d;
  int num_directions = 0;
};

inline Vector unit_at_angle(double phi) {
  Vector u(2);
  u << std::cos(phi), std::sin(phi);
  return u;
}

template <class Objective>
double golden_refine(const Objective& f, double lo, double hi, double& best, Vector& best_u) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(unit_at_angle(c));
  double fd = f(unit_at_angle(d));
  for (int it = 0; it < 40; ++it) {
    if (fc > best) {
      best = fc;
      best_u = unit_at_angle(c);
    }
    if (fd > best) {
      best = fd;
      best_u = unit_at_angle(d);
    }
    if (std::isinf(best)) break;
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(unit_at_angle(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(unit_at_angle(d));
    }
  }
  return best;
}

/// `f` maps a unit vector (Vector) to a non-negative value, possibly +inf.
template <class Objective>
DirectionalSup directional_sup(Index dim, const MethodSpec& m, const Objective& f) {
  using Kind = MethodSpec::Kind;
  DirectionalSup out;
  if (dim == 1) {
    if (m.kind == Kind::exact2d) throw InvalidArgument("exact2d requires dimension 2");
    Vector plus = Vector::Ones(1);
    Vector minus = -plus;
    const double fp = f(plus);
    const double fm = f(minus);
    out.value = fp >= fm ? fp : fm;
    out.direction = fp >= fm ? plus : minus;
    out.method = Method::exact1d;
    out.num_directions = 2;
    return out;
  }
  if (m.kind == Kind::exact1d) throw InvalidArgument("exact1d requires dimension 1");
  if (m.kind == Kind::exact2d) throw InvalidArgument("no exact planar algorithm for this notion; use bruteforce or sampled");

  const bool sampled = m.kind == Kind::sampled || (m.kind == Kind::auto_ && dim > 2);
  if (!sampled && dim != 2) throw InvalidArgument("angular grid requires dimension 2");

  out.value = -1.0;
  double spacing = 0.0;
  if (sampled) {
    const int count = m.num_directions > 0 ? m.num_directions : kDefaultSampledDirections;
    for (const Direction& u : sample_directions(dim, count, m.seed)) {
      const double v = f(u.vec());
      if (v > out.value) {
        out.value = v;
        out.direction = u.vec();
      }
    }
    out.method = Method::sampled;
    out.num_directions = count;
    spacing = std::numbers::pi / count;
  } else {
    const int count = m.num_directions > 0 ? m.num_directions : kDefaultGridAngles;
    spacing = std::numbers::pi / count;
    for (int k = 0; k < count; ++k) {
      const Vector u = unit_at_angle(spacing * k);
      const double v = f(u);
      if (v > out.value) {
        out.value = v;
        out.direction = u;
      }
    }
    out.method = Method::bruteforce;
    out.num_directions = count;
  }
  if (dim == 2 && m.refine && std::isfinite(out.value)) {
    const double phi = std::atan2(out.direction[1], out.direction[0]);
    golden_refine(f, phi - spacing, phi + spacing, out.value, out.direction);
  }
  return out;
}

}  // namespace regdepth::detail
