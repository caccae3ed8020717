#include "sessionscope/coverage.hpp"

#include <algorithm>

#include "json_util.hpp"

namespace sessionscope {

std::size_t CoverageGrid::seen_count() const {
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

double CoverageGrid::covered_fraction() const {
  if (seen.empty()) return 0.0;
  return static_cast<double>(seen_count()) / static_cast<double>(seen.size());
}

CoverageGrid compute_coverage(const std::vector<PoseSample>& camera_stream,
                              const CameraParams& params, const GridSpec& spec,
                              double probe_height) {
  if (camera_stream.empty()) throw Error(ErrorKind::EmptyData, "empty camera stream");
  if (!spec.valid()) throw Error(ErrorKind::Argument, "invalid grid spec");
  CoverageGrid grid{spec, std::vector<bool>(spec.cell_count(), false),
                    std::vector<std::optional<double>>(spec.cell_count())};

  std::vector<Vec3> probes;
  probes.reserve(spec.cell_count());
  for (std::size_t row = 0; row < spec.rows; ++row) {
    for (std::size_t col = 0; col < spec.cols; ++col) {
      const auto [x, z] = spec.center(col, row);
      probes.push_back({x, probe_height, z});
    }
  }

  for (const auto& sample : camera_stream) {
    const Frustum f = build_frustum(sample.pose, params);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      if (grid.seen[i] || !f.contains(probes[i])) continue;
      grid.seen[i] = true;
      grid.first_seen_t[i] = sample.t;
    }
  }
  return grid;
}

void merge_coverage(CoverageGrid& into, const CoverageGrid& other) {
  if (!(into.spec == other.spec)) throw Error(ErrorKind::Argument, "coverage grids differ in spec");
  for (std::size_t i = 0; i < into.seen.size(); ++i) {
    if (!other.seen[i]) continue;
    if (!into.seen[i] || *other.first_seen_t[i] < *into.first_seen_t[i]) {
      into.first_seen_t[i] = other.first_seen_t[i];
    }
    into.seen[i] = true;
  }
}

std::string coverage_report_json(const CoverageGrid& grid) {
  detail::ordered_json spec;
  spec["origin"] = detail::ordered_json::array({grid.spec.origin_x, grid.spec.origin_z});
  spec["cell_size"] = grid.spec.cell_size;
  spec["cols"] = grid.spec.cols;
  spec["rows"] = grid.spec.rows;
  detail::ordered_json unseen = detail::ordered_json::array();
  for (std::size_t row = 0; row < grid.spec.rows; ++row) {
    for (std::size_t col = 0; col < grid.spec.cols; ++col) {
      if (!grid.is_seen(col, row)) unseen.push_back({col, row});
    }
  }
  detail::ordered_json j;
  j["spec"] = std::move(spec);
  j["covered_fraction"] = grid.covered_fraction();
  j["unseen_cells"] = std::move(unseen);
  return j.dump();
}

std::vector<VisibilityInterval> visibility_intervals(const std::vector<PoseSample>& camera_stream,
                                                     const CameraParams& params,
                                                     const std::vector<PoseSample>& object_stream) {
  std::vector<VisibilityInterval> out;
  std::optional<VisibilityInterval> open;
  std::size_t i = 0, j = 0;
  while (i < camera_stream.size() && j < object_stream.size()) {
    const double tc = camera_stream[i].t;
    const double to = object_stream[j].t;
    if (tc < to) {
      ++i;
      continue;
    }
    if (to < tc) {
      ++j;
      continue;
    }
    const bool inside =
        build_frustum(camera_stream[i].pose, params).contains(object_stream[j].pose.position);
    if (inside) {
      if (open) {
        open->t_exit = tc;
      } else {
        open = VisibilityInterval{tc, tc};
      }
    } else if (open) {
      out.push_back(*open);
      open.reset();
    }
    ++i;
    ++j;
  }
  if (open) out.push_back(*open);
  return out;
}

}  // namespace sessionscope
