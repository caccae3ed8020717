#include "sessionscope/metrics.hpp"

#include <fstream>

#include "json_util.hpp"

namespace sessionscope {

namespace {

constexpr std::array<MetricKind, kMetricCount> kAllMetrics{
    MetricKind::Played,  MetricKind::PlayedReverse,  MetricKind::PlayedForward,
    MetricKind::Paused,  MetricKind::HeatmapToggled, MetricKind::NoteGenerated};

}  // namespace

std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::Played: return "NumTimesPlayed";
    case MetricKind::PlayedReverse: return "NumTimesPlayedReverse";
    case MetricKind::PlayedForward: return "NumTimesPlayedForward";
    case MetricKind::Paused: return "NumTimesPaused";
    case MetricKind::HeatmapToggled: return "NumTimesHeatmapToggled";
    case MetricKind::NoteGenerated: return "NumTimesNoteGenerated";
  }
  return "";
}

std::uint64_t UsageMetrics::get(MetricKind kind) const {
  switch (kind) {
    case MetricKind::Played: return played;
    case MetricKind::PlayedReverse: return played_reverse;
    case MetricKind::PlayedForward: return played_forward;
    case MetricKind::Paused: return paused;
    case MetricKind::HeatmapToggled: return heatmap_toggled;
    case MetricKind::NoteGenerated: return note_generated;
  }
  return 0;
}

std::uint64_t UsageMetrics::total() const {
  return played + played_reverse + played_forward + paused + heatmap_toggled + note_generated;
}

std::string metrics_to_json(const UsageMetrics& m) {
  detail::ordered_json j;
  for (auto kind : kAllMetrics) j[std::string(metric_name(kind))] = m.get(kind);
  return j.dump();
}

UsageMetrics metrics_from_json(std::string_view text) {
  detail::json j;
  try {
    j = detail::json::parse(text);
  } catch (const detail::json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("metrics: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "metrics: expected an object");
  detail::FieldReader r(j, 0);
  UsageMetrics m;
  m.played = r.unsigned_integer("NumTimesPlayed");
  m.played_reverse = r.unsigned_integer("NumTimesPlayedReverse");
  m.played_forward = r.unsigned_integer("NumTimesPlayedForward");
  m.paused = r.unsigned_integer("NumTimesPaused");
  m.heatmap_toggled = r.unsigned_integer("NumTimesHeatmapToggled");
  m.note_generated = r.unsigned_integer("NumTimesNoteGenerated");
  return m;
}

UsageMetrics MetricsRecorder::snapshot() const {
  auto at = [this](MetricKind k) {
    return counters_[static_cast<std::size_t>(k)].load(std::memory_order_relaxed);
  };
  return {at(MetricKind::Played),  at(MetricKind::PlayedReverse),  at(MetricKind::PlayedForward),
          at(MetricKind::Paused),  at(MetricKind::HeatmapToggled), at(MetricKind::NoteGenerated)};
}

void MetricsRecorder::reset() {
  for (auto& c : counters_) c.store(0, std::memory_order_relaxed);
}

void MetricsRecorder::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  out << metrics_to_json(snapshot()) << '\n';
  if (!out) throw Error(ErrorKind::Io, "cannot write metrics to '" + path.string() + "'");
}

}  // namespace sessionscope
