#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sessionscope/math.hpp"
#include "sessionscope/metrics.hpp"
#include "sessionscope/wall_time.hpp"

namespace sessionscope {

class ReplaySession;

inline constexpr std::string_view kNotesExtension = ".notes.jsonl";

struct Annotation {
  std::string id;
  Vec3 anchor_position;
  double anchor_t = 0.0;
  std::string text;
  WallTime created_at;
  std::optional<std::string> author;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
};

struct RadiusQuery {
  Vec3 center;
  double radius = 0.0;
};

/// In-memory notes for one loaded set, with a line-delimited JSON sidecar.
class AnnotationStore {
 public:
  using Clock = std::function<WallTime()>;

  explicit AnnotationStore(Clock clock = WallTime::now) : clock_(std::move(clock)) {}

  /// Throws Error(Argument) for empty text or a non-finite anchor.
  const Annotation& add(const Vec3& position, double t, std::string text,
                        std::optional<std::string> author = std::nullopt);

  /// Matches every given predicate (inclusive bounds), sorted by anchor_t
  /// then id. No predicates returns everything.
  std::vector<Annotation> query(std::optional<TimeWindow> window = std::nullopt,
                                std::optional<RadiusQuery> radius = std::nullopt) const;

  const std::vector<Annotation>& all() const { return notes_; }
  std::size_t size() const { return notes_.size(); }

  /// One {"rec":"note",...} line per annotation. Returns the count written.
  std::size_t save(const std::filesystem::path& path) const;
  /// Replaces the store's contents. Parse errors carry the line number.
  std::size_t load(const std::filesystem::path& path);

  std::string to_jsonl() const;
  void from_jsonl(std::string_view text);

 private:
  Clock clock_;
  std::vector<Annotation> notes_;
  std::uint64_t next_id_ = 1;
};

/// Creates a note at the transport's current time. Playing transports are
/// paused first (without counting a pause press); every note counts one
/// NumTimesNoteGenerated.
const Annotation& annotate(ReplaySession& replay, AnnotationStore& store,
                           MetricsRecorder* metrics, const Vec3& position, std::string text,
                           std::optional<std::string> author = std::nullopt);

}  // namespace sessionscope
