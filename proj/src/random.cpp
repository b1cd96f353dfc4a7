#include "regdepth/random.hpp"

#include <cmath>

namespace regdepth {

double NormalGenerator::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double NormalGenerator::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform01() - 1.0;
    v = 2.0 * uniform01() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

std::vector<Direction> sample_directions(Index dim, int count, std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("direction dimension must be >= 1");
  if (count < 1) throw InvalidArgument("need at least one sampled direction");
  NormalGenerator gen(seed);
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(count));
  Vector v(dim);
  while (static_cast<int>(out.size()) < count) {
    for (Index j = 0; j < dim; ++j) v[j] = gen.normal();
    if (v.norm() > 1e-300) out.push_back(Direction::normalized(v));
  }
  return out;
}

}  // namespace regdepth
