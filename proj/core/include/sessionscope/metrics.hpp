#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace sessionscope {

/// Analyst interactions counted during a review session.
enum class MetricKind {
  Played,          // "play" presses
  PlayedReverse,   // "rewind" presses
  PlayedForward,   // "fast forward" presses
  Paused,          // "pause" presses
  HeatmapToggled,  // heatmap switched on
  NoteGenerated,   // annotations created
};

inline constexpr std::size_t kMetricCount = 6;

/// Serialized counter name, e.g. "NumTimesPlayed".
std::string_view metric_name(MetricKind kind);

struct UsageMetrics {
  std::uint64_t played = 0;
  std::uint64_t played_reverse = 0;
  std::uint64_t played_forward = 0;
  std::uint64_t paused = 0;
  std::uint64_t heatmap_toggled = 0;
  std::uint64_t note_generated = 0;

  friend bool operator==(const UsageMetrics&, const UsageMetrics&) = default;

  std::uint64_t get(MetricKind kind) const;
  std::uint64_t total() const;
};

/// {"NumTimesPlayed":n, ...} with the six names in fixed order.
std::string metrics_to_json(const UsageMetrics& m);
/// Throws Error(Parse) on malformed input or missing names.
UsageMetrics metrics_from_json(std::string_view text);

/// Shared counter set. Increments are atomic and may come from any thread.
class MetricsRecorder {
 public:
  void record(MetricKind kind) {
    counters_[static_cast<std::size_t>(kind)].fetch_add(1, std::memory_order_relaxed);
  }
  UsageMetrics snapshot() const;
  void reset();
  /// Writes metrics_to_json(snapshot()) to `path`; throws Error(Io).
  void save(const std::filesystem::path& path) const;

 private:
  std::array<std::atomic<std::uint64_t>, kMetricCount> counters_{};
};

}  // namespace sessionscope
