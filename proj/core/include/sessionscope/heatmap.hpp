#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sessionscope/replay.hpp"

namespace sessionscope {

inline constexpr double kDefaultCellSize = 0.1;

/// Regular grid over the X/Z ground plane. Cells are half-open
/// [lo, lo + cell_size) except the last column/row, which also owns the far
/// border.
struct GridSpec {
  double origin_x = 0.0;  // min x
  double origin_z = 0.0;  // min z
  double cell_size = kDefaultCellSize;
  std::size_t cols = 1;
  std::size_t rows = 1;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

  bool valid() const;
  std::size_t cell_count() const { return cols * rows; }
  /// (col, row) of the cell holding (x, z), or nullopt outside the grid.
  std::optional<std::pair<std::size_t, std::size_t>> cell_of(double x, double z) const;
  /// Cell center on the ground plane as (x, z).
  std::pair<double, double> center(std::size_t col, std::size_t row) const;
};

/// Smallest grid covering every position's (x, z), padded by one cell on
/// each side. Throws Error(EmptyData) for no positions.
GridSpec derive_grid_spec(std::span<const Vec3> positions, double cell_size = kDefaultCellSize);

struct DensityGrid {
  GridSpec spec;
  std::vector<std::uint64_t> counts;  // row-major, rows x cols
  std::uint64_t max_count = 0;

  friend bool operator==(const DensityGrid&, const DensityGrid&) = default;

  std::uint64_t at(std::size_t col, std::size_t row) const { return counts[row * spec.cols + col]; }
  std::uint64_t total() const;
};

/// Bins each position; positions outside the grid are not counted.
DensityGrid accumulate_density(std::span<const Vec3> positions, const GridSpec& spec);

struct HeatmapOptions {
  std::set<Category> categories{Category::Player};
  double cell_size = kDefaultCellSize;
};

/// Recorded positions of every stream whose category is in
/// `options.categories` and which passes `filters`. Hands contribute their
/// wrist positions.
std::vector<Vec3> heatmap_positions(const LoadedSet& set, const FilterSet& filters,
                                    const HeatmapOptions& options = {});

/// Throws Error(EmptyData) when no sample contributes. Without `spec` the
/// grid is derived from the contributing samples.
DensityGrid accumulate_density(const LoadedSet& set, const FilterSet& filters,
                               std::optional<GridSpec> spec = std::nullopt,
                               const HeatmapOptions& options = {});

/// Cold-to-hot hue in degrees: 240 (blue) as count -> 0+, 0 (red) at max.
double density_hue(std::uint64_t count, std::uint64_t max_count, bool log_scale = false);
Rgb hsv_to_rgb(double hue_deg, double saturation, double value);

struct Rgba {
  std::uint8_t r = 0, g = 0, b = 0, a = 0;
  friend bool operator==(const Rgba&, const Rgba&) = default;
};

struct RgbaImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgba> pixels;  // row-major, row 0 first

  friend bool operator==(const RgbaImage&, const RgbaImage&) = default;

  const Rgba& at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// One pixel per cell, pixel row 0 = grid row 0 (min z). Empty cells are
/// fully transparent.
RgbaImage colorize(const DensityGrid& grid, bool log_scale = false);

/// PNG, 8-bit RGBA, no ancillary chunks: identical images give identical bytes.
std::vector<std::uint8_t> encode_png(const RgbaImage& image);

/// {"origin":[x,z],"cell_size":c,"cols":n,"rows":m,"counts":[...]}
std::string grid_to_json(const DensityGrid& grid);
/// Throws Error(Parse).
DensityGrid grid_from_json(std::string_view text);

struct HeatmapFiles {
  std::filesystem::path png;
  std::filesystem::path sidecar;
};

/// Sidecar path for a raster path: "x.png" -> "x.json".
std::filesystem::path sidecar_path(const std::filesystem::path& png_path);

/// Writes the raster and its JSON sidecar; throws Error(Io).
HeatmapFiles export_heatmap(const DensityGrid& grid, const RgbaImage& image,
                            const std::filesystem::path& png_path);

}  // namespace sessionscope
