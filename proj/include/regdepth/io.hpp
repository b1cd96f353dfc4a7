#pragma once

// Synthetic data, CSV datasets and the surface/contour JSON format.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "regdepth/core.hpp"
#include "regdepth/surface.hpp"

namespace regdepth {

struct SyntheticConfig {
  Index n = 300;
  double beta0 = 0.5;
  double beta1 = 0.5;
  /// Variance of the noise (not its standard deviation).
  double noise_var = 0.2;
  std::uint64_t seed = 2018;
};

/// x_i ~ N(0, 1), e_i ~ N(0, noise_var), y_i = beta0 + beta1 x_i + e_i. One
/// NormalGenerator is seeded with c.seed and drawn as x_1, e_1, x_2, e_2, ...
RegressionDataset gen_synthetic(const SyntheticConfig& c);

using CsvData = std::variant<RegressionDataset, PointCloud>;

/// Header `x1,...,xd,y` gives a dataset, `x1,...,xd` a point cloud. LF or
/// CRLF line endings; blank trailing lines are ignored.
CsvData parse_csv(const std::string& text);
CsvData read_csv(const std::filesystem::path& path);

/// Shortest round-trip formatting, so read_csv(write_csv(x)) == x exactly.
std::string format_csv(const RegressionDataset& ds);
std::string format_csv(const PointCloud& cloud);
void write_csv(const RegressionDataset& ds, const std::filesystem::path& path);
void write_csv(const PointCloud& cloud, const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Canonical JSON:
/// {"notion", "method", "grid": {"beta0": [lo, hi, count], "beta1": [...]},
///  "values": row-major, "levels": [...], "contours": per level, a list of
///  polylines [[b0, b1], ...]}.
std::string surface_json(const DepthSurface& s, const ContourSet& contours, int indent = -1);
void write_surface_json(const DepthSurface& s, const ContourSet& contours, const std::filesystem::path& path);

struct SurfaceFile {
  DepthSurface surface;
  ContourSet contours;
};
SurfaceFile parse_surface_json(const std::string& text);
SurfaceFile read_surface_json(const std::filesystem::path& path);

Method parse_method(std::string_view name);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace regdepth
