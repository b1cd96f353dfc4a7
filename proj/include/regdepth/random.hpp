#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "regdepth/core.hpp"

namespace regdepth {

/// Seeded standard normal stream with a fixed, documented construction so a
/// seed yields the same numbers on every conforming platform:
///  - raw bits from std::mt19937_64 (its output sequence is fixed by the
///    C++ standard),
///  - uniforms on (-1, 1) from the top 53 bits,
///  - normals from the Marsaglia polar method, both variates of a pair used
///    in order.
/// std::normal_distribution is deliberately avoided: its algorithm is
/// implementation-defined.
class NormalGenerator {
 public:
  explicit NormalGenerator(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform01();
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Uniform directions on the unit sphere in R^dim (normalized independent
/// standard normals), reproducible from (seed, count).
std::vector<Direction> sample_directions(Index dim, int count, std::uint64_t seed);

}  // namespace regdepth
