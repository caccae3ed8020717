#include "sessionscope/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "json_util.hpp"

namespace sessionscope {

namespace {

// Index along one axis; `n` is the cell count. The far border belongs to the
// last cell.
std::optional<std::size_t> axis_index(double v, double origin, double cell, std::size_t n) {
  const double u = (v - origin) / cell;
  if (!(u >= 0.0)) return std::nullopt;
  const double size = static_cast<double>(n);
  if (u > size) return std::nullopt;
  if (u == size) return n - 1;
  return static_cast<std::size_t>(std::floor(u));
}

void write_bytes(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

}  // namespace

bool GridSpec::valid() const {
  return std::isfinite(origin_x) && std::isfinite(origin_z) && cell_size > 0.0 &&
         std::isfinite(cell_size) && cols >= 1 && rows >= 1;
}

std::optional<std::pair<std::size_t, std::size_t>> GridSpec::cell_of(double x, double z) const {
  const auto col = axis_index(x, origin_x, cell_size, cols);
  const auto row = axis_index(z, origin_z, cell_size, rows);
  if (!col || !row) return std::nullopt;
  return std::pair{*col, *row};
}

std::pair<double, double> GridSpec::center(std::size_t col, std::size_t row) const {
  return {origin_x + (static_cast<double>(col) + 0.5) * cell_size,
          origin_z + (static_cast<double>(row) + 0.5) * cell_size};
}

GridSpec derive_grid_spec(std::span<const Vec3> positions, double cell_size) {
  if (positions.empty()) throw Error(ErrorKind::EmptyData, "no positions to derive a grid from");
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw Error(ErrorKind::Argument, "cell size must be positive");
  }
  double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
  double min_z = min_x, max_z = -min_x;
  for (const auto& p : positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_z = std::min(min_z, p.z);
    max_z = std::max(max_z, p.z);
  }
  GridSpec spec;
  spec.cell_size = cell_size;
  spec.origin_x = min_x - cell_size;
  spec.origin_z = min_z - cell_size;
  spec.cols = static_cast<std::size_t>(std::floor((max_x - spec.origin_x) / cell_size)) + 2;
  spec.rows = static_cast<std::size_t>(std::floor((max_z - spec.origin_z) / cell_size)) + 2;
  return spec;
}

std::uint64_t DensityGrid::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

DensityGrid accumulate_density(std::span<const Vec3> positions, const GridSpec& spec) {
  if (!spec.valid()) throw Error(ErrorKind::Argument, "invalid grid spec");
  DensityGrid grid{spec, std::vector<std::uint64_t>(spec.cell_count(), 0), 0};
  for (const auto& p : positions) {
    if (auto cell = spec.cell_of(p.x, p.z)) {
      auto& c = grid.counts[cell->second * spec.cols + cell->first];
      ++c;
      grid.max_count = std::max(grid.max_count, c);
    }
  }
  return grid;
}

std::vector<Vec3> heatmap_positions(const LoadedSet& set, const FilterSet& filters,
                                    const HeatmapOptions& options) {
  std::vector<Vec3> out;
  for (std::size_t s = 0; s < set.sessions.size(); ++s) {
    if (!filters.session_on(s)) continue;
    const SessionLog& log = set.sessions[s];
    for (const auto& desc : log.objects) {
      if (!options.categories.contains(desc.category)) continue;
      if (!filters.object_on(desc.id, filter_category(desc.category))) continue;
      if (auto it = log.samples.find(desc.id); it != log.samples.end()) {
        for (const auto& sample : it->second) out.push_back(sample.pose.position);
      }
      if (auto it = log.hands.find(desc.id); it != log.hands.end()) {
        for (const auto& frame : it->second) out.push_back(frame.wrist.position);
      }
    }
  }
  return out;
}

DensityGrid accumulate_density(const LoadedSet& set, const FilterSet& filters,
                               std::optional<GridSpec> spec, const HeatmapOptions& options) {
  const std::vector<Vec3> positions = heatmap_positions(set, filters, options);
  if (positions.empty()) throw Error(ErrorKind::EmptyData, "no samples pass the heatmap filters");
  return accumulate_density(positions, spec ? *spec : derive_grid_spec(positions, options.cell_size));
}

double density_hue(std::uint64_t count, std::uint64_t max_count, bool log_scale) {
  if (max_count == 0) return 240.0;
  const double c = static_cast<double>(count);
  const double m = static_cast<double>(max_count);
  const double level = log_scale ? std::log1p(c) / std::log1p(m) : c / m;
  return 240.0 * (1.0 - level);
}

Rgb hsv_to_rgb(double hue_deg, double saturation, double value) {
  const double h = std::fmod(std::fmod(hue_deg, 360.0) + 360.0, 360.0) / 60.0;
  const double chroma = value * saturation;
  const double x = chroma * (1.0 - std::abs(std::fmod(h, 2.0) - 1.0));
  const double m = value - chroma;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(h)) {
    case 0: r = chroma; g = x; break;
    case 1: r = x; g = chroma; break;
    case 2: g = chroma; b = x; break;
    case 3: g = x; b = chroma; break;
    case 4: r = x; b = chroma; break;
    default: r = chroma; b = x; break;
  }
  auto to8 = [](double v) { return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  return {to8(r + m), to8(g + m), to8(b + m)};
}

RgbaImage colorize(const DensityGrid& grid, bool log_scale) {
  RgbaImage image{grid.spec.cols, grid.spec.rows, std::vector<Rgba>(grid.counts.size())};
  for (std::size_t i = 0; i < grid.counts.size(); ++i) {
    const std::uint64_t c = grid.counts[i];
    if (c == 0 || grid.max_count == 0) continue;  // transparent
    const Rgb rgb = hsv_to_rgb(density_hue(c, grid.max_count, log_scale), 1.0, 1.0);
    image.pixels[i] = {rgb.r, rgb.g, rgb.b, 255};
  }
  return image;
}

std::string grid_to_json(const DensityGrid& grid) {
  detail::ordered_json j;
  j["origin"] = detail::ordered_json::array({grid.spec.origin_x, grid.spec.origin_z});
  j["cell_size"] = grid.spec.cell_size;
  j["cols"] = grid.spec.cols;
  j["rows"] = grid.spec.rows;
  j["counts"] = grid.counts;
  return j.dump();
}

DensityGrid grid_from_json(std::string_view text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("heatmap grid: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "heatmap grid: expected an object");
  const detail::FieldReader r(j, 0);
  const auto& origin = r.at("origin");
  if (!origin.is_array() || origin.size() != 2 || !origin[0].is_number() || !origin[1].is_number()) {
    r.fail("origin must be [x,z]");
  }
  DensityGrid grid;
  grid.spec.origin_x = origin[0].get<double>();
  grid.spec.origin_z = origin[1].get<double>();
  grid.spec.cell_size = r.number("cell_size");
  grid.spec.cols = r.unsigned_integer("cols");
  grid.spec.rows = r.unsigned_integer("rows");
  if (!grid.spec.valid()) r.fail("invalid grid spec");
  const auto& counts = r.at("counts");
  if (!counts.is_array() || counts.size() != grid.spec.cell_count()) {
    r.fail("counts must hold cols*rows entries");
  }
  grid.counts.reserve(counts.size());
  for (const auto& c : counts) {
    if (!c.is_number_unsigned()) r.fail("counts must be non-negative integers");
    grid.counts.push_back(c.get<std::uint64_t>());
    grid.max_count = std::max(grid.max_count, grid.counts.back());
  }
  return grid;
}

std::filesystem::path sidecar_path(const std::filesystem::path& png_path) {
  auto out = png_path;
  if (out.extension() == ".png") {
    out.replace_extension(".json");
  } else {
    out += ".json";
  }
  return out;
}

HeatmapFiles export_heatmap(const DensityGrid& grid, const RgbaImage& image,
                            const std::filesystem::path& png_path) {
  const std::vector<std::uint8_t> png = encode_png(image);
  const std::string sidecar = grid_to_json(grid) + "\n";
  HeatmapFiles files{png_path, sidecar_path(png_path)};
  write_bytes(files.png, png.data(), png.size());
  write_bytes(files.sidecar, sidecar.data(), sidecar.size());
  return files;
}

}  // namespace sessionscope
