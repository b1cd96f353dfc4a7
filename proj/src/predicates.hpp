#pragma once

// Exact sign predicates for planar vectors. Inputs are doubles taken at face
// value; the result is the sign of the real-number expression, computed with
// error-free transformations (fma products, two-sum expansions).

#include <array>
#include <cmath>

namespace regdepth::detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Sign of t[0] + t[1] + t[2] + t[3] evaluated exactly.
inline int exact_sum_sign(const std::array<double, 4>& t) {
  std::array<double, 5> e{};
  int len = 0;
  for (double b : t) {
    std::array<double, 5> h{};
    int k = 0;
    double q = b;
    for (int i = 0; i < len; ++i) {
      const double s = q + e[i];
      const double bv = s - q;
      const double err = (q - (s - bv)) + (e[i] - bv);
      if (err != 0.0) h[k++] = err;
      q = s;
    }
    if (q != 0.0) h[k++] = q;
    e = h;
    len = k;
  }
  return len == 0 ? 0 : sign_of(e[len - 1]);
}

// sign(a*b - c*d)
inline int diff_of_products_sign(double a, double b, double c, double d) {
  const double p = a * b;
  const double pe = std::fma(a, b, -p);
  const double q = c * d;
  const double qe = std::fma(c, d, -q);
  return exact_sum_sign({p, pe, -q, -qe});
}

// sign(a*b + c*d)
inline int sum_of_products_sign(double a, double b, double c, double d) {
  return diff_of_products_sign(a, b, -c, d);
}

// sign of the 2D cross product v x w
inline int cross_sign(double vx, double vy, double wx, double wy) {
  return diff_of_products_sign(vx, wy, vy, wx);
}

inline int dot_sign(double vx, double vy, double wx, double wy) {
  return sum_of_products_sign(vx, wx, vy, wy);
}

}  // namespace regdepth::detail
