#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sessionscope/frustum.hpp"
#include "sessionscope/heatmap.hpp"

namespace sessionscope {

inline constexpr double kDefaultProbeHeight = 1.0;

/// Ground-plane cells that fell inside a camera frustum, probed at the cell
/// centers at a fixed height. Row-major like DensityGrid.
struct CoverageGrid {
  GridSpec spec;
  std::vector<bool> seen;
  std::vector<std::optional<double>> first_seen_t;

  friend bool operator==(const CoverageGrid&, const CoverageGrid&) = default;

  std::size_t seen_count() const;
  double covered_fraction() const;
  bool is_seen(std::size_t col, std::size_t row) const { return seen[row * spec.cols + col]; }
};

/// Throws Error(EmptyData) for an empty stream.
CoverageGrid compute_coverage(const std::vector<PoseSample>& camera_stream,
                              const CameraParams& params, const GridSpec& spec,
                              double probe_height = kDefaultProbeHeight);

/// Cellwise union; first_seen_t keeps the earlier time. Specs must match.
void merge_coverage(CoverageGrid& into, const CoverageGrid& other);

/// {"spec":{...},"covered_fraction":f,"unseen_cells":[[col,row],...]}
std::string coverage_report_json(const CoverageGrid& grid);

struct VisibilityInterval {
  double t_enter = 0.0;
  double t_exit = 0.0;

  friend bool operator==(const VisibilityInterval&, const VisibilityInterval&) = default;
};

/// At each timestamp present in both streams, tests the object's position
/// against that instant's frustum and merges consecutive hits into closed
/// intervals.
std::vector<VisibilityInterval> visibility_intervals(const std::vector<PoseSample>& camera_stream,
                                                     const CameraParams& params,
                                                     const std::vector<PoseSample>& object_stream);

}  // namespace sessionscope
