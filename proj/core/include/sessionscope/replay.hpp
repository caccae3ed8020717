#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sessionscope/metrics.hpp"
#include "sessionscope/model.hpp"

namespace sessionscope {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Session colors, assigned by load order.
inline constexpr std::array<Rgb, 8> kSessionPalette{{
    {230, 25, 75},    // red
    {60, 180, 75},    // green
    {0, 130, 200},    // blue
    {245, 130, 48},   // orange
    {145, 30, 180},   // purple
    {70, 240, 240},   // cyan
    {240, 50, 230},   // magenta
    {210, 245, 60},   // lime
}};

inline constexpr std::size_t kDefaultLoadLimit = 3;

struct LoadedSet {
  std::vector<SessionLog> sessions;
  std::vector<Rgb> colors;
  double duration_max = 0.0;
};

/// Throws Error(Capacity) when more than `limit` logs are given and
/// Error(Argument) when none are. `limit` may not exceed the palette size.
LoadedSet load_sessions(std::vector<SessionLog> logs, std::size_t limit = kDefaultLoadLimit);

// Transport --------------------------------------------------------------

enum class TransportMode { Stopped, Playing, Paused };
enum class Direction { Forward, Backward };

std::string_view to_string(TransportMode m);
std::string_view to_string(Direction d);

struct TransportState {
  TransportMode mode = TransportMode::Stopped;
  Direction direction = Direction::Forward;
  double rate = 1.0;
  double t = 0.0;

  friend bool operator==(const TransportState&, const TransportState&) = default;
};

enum class TransportCommandKind { Play, Pause, Resume, Rewind, FastForward, Stop, Seek };

struct TransportCommand {
  TransportCommandKind kind = TransportCommandKind::Play;
  double seek_t = 0.0;  // Seek only

  static TransportCommand seek(double t) { return {TransportCommandKind::Seek, t}; }
};

std::string_view to_string(TransportCommandKind k);
/// "play", "pause", "resume", "rewind", "fast_forward", "stop", "seek".
/// Throws Error(Argument) for anything else.
TransportCommandKind parse_transport_command(std::string_view name);

struct TransportRates {
  double play = 1.0;
  double fast_forward = 2.0;
  double rewind = 1.0;
};

/// Replay clock state machine. Accepted play / rewind / fast-forward / pause
/// presses are counted in the attached MetricsRecorder.
class Transport {
 public:
  explicit Transport(double duration_max = 0.0, MetricsRecorder* metrics = nullptr,
                     TransportRates rates = {});

  const TransportState& state() const { return state_; }
  double duration_max() const { return duration_max_; }

  /// Throws Error(Argument) for a non-finite seek target; the state and
  /// metrics are unchanged in that case.
  TransportState apply(const TransportCommand& cmd);

  /// Moves t while Playing; reaching either end of the timeline pauses.
  TransportState advance(double wall_dt);

  /// Playing -> Paused without counting a pause press.
  void auto_pause();

 private:
  void start(Direction direction, double rate);

  TransportState state_;
  double duration_max_;
  MetricsRecorder* metrics_;
  TransportRates rates_;
  bool has_played_ = false;
};

// Filters ----------------------------------------------------------------

enum class FilterCategory { Player, Camera, Hand, AudioSource, Custom, Statics, Inputs, Audio, Trails };

std::string_view to_string(FilterCategory c);
/// Throws Error(Argument) on unknown names.
FilterCategory parse_filter_category(std::string_view name);
FilterCategory filter_category(Category c);
const std::vector<FilterCategory>& all_filter_categories();

/// Visibility toggles. An object override wins over its category; a disabled
/// session hides everything it contains. Absent session entries are enabled.
struct FilterSet {
  std::set<FilterCategory> enabled;
  std::map<std::string, bool> object_overrides;
  std::map<std::size_t, bool> session_enabled;

  friend bool operator==(const FilterSet&, const FilterSet&) = default;

  static FilterSet all();

  bool category_on(FilterCategory c) const { return enabled.contains(c); }
  bool session_on(std::size_t session) const;
  bool object_on(const std::string& id, FilterCategory c) const;
};

/// Throws Error(Reference) for overrides naming no object in any loaded
/// session, Error(Argument) for session indices out of range.
void check_filters(const LoadedSet& set, const FilterSet& filters);

// Frames -----------------------------------------------------------------

struct FrameObject {
  std::size_t session = 0;
  std::string object_id;
  Category category = Category::Custom;
  Pose pose;
  std::vector<Vec3> joints;           // hands only
  std::optional<CameraParams> camera;  // cameras only
  Rgb color;

  friend bool operator==(const FrameObject&, const FrameObject&) = default;
};

struct FrameStatic {
  std::size_t session = 0;
  StaticObject object;
  Rgb color;

  friend bool operator==(const FrameStatic&, const FrameStatic&) = default;
};

struct TrailPoint {
  double t = 0.0;
  Vec3 position;

  friend bool operator==(const TrailPoint&, const TrailPoint&) = default;
};

struct Trail {
  std::size_t session = 0;
  std::string object_id;
  Rgb color;
  std::vector<TrailPoint> points;

  friend bool operator==(const Trail&, const Trail&) = default;
};

struct InputMarker {
  std::size_t session = 0;
  InputEvent event;
  friend bool operator==(const InputMarker&, const InputMarker&) = default;
};

struct AudioMarker {
  std::size_t session = 0;
  AudioEvent event;
  friend bool operator==(const AudioMarker&, const AudioMarker&) = default;
};

struct ReplayFrame {
  double t = 0.0;
  TransportState transport;
  std::vector<FrameObject> objects;
  std::vector<FrameStatic> statics;
  std::vector<Trail> trails;
  std::vector<InputMarker> inputs;
  std::vector<AudioMarker> audio;

  friend bool operator==(const ReplayFrame&, const ReplayFrame&) = default;
};

struct ResolveOptions {
  double event_window = 0.25;  // seconds either side of t
};

/// Pose of a stream at time t: interpolated between the bracketing samples,
/// clamped to the first/last sample outside the recorded range. The stream
/// must be non-empty and sorted.
Pose resolve_pose(const std::vector<PoseSample>& stream, double t);
HandFrame resolve_hand(const std::vector<HandFrame>& stream, double t);

/// `t` is clamped to [0, duration_max]; non-finite t throws Error(Argument).
ReplayFrame resolve_frame(const LoadedSet& set, double t, const FilterSet& filters,
                          const TransportState& transport = {},
                          const ResolveOptions& options = {});

/// Recorded positions with timestamp <= t in time order, ending with the
/// interpolated position at t (omitted when t falls exactly on the last
/// included sample). Throws Error(Reference) for unknown objects.
std::vector<TrailPoint> trail_prefix(const LoadedSet& set, std::size_t session,
                                     const std::string& object_id, double t);

/// One analyst's replay: loaded logs, transport, filters. Not internally
/// synchronized; callers serialize access.
class ReplaySession {
 public:
  explicit ReplaySession(LoadedSet set, MetricsRecorder* metrics = nullptr,
                         ResolveOptions options = {}, TransportRates rates = {});

  const LoadedSet& loaded() const { return set_; }
  const TransportState& transport() const { return transport_.state(); }
  const FilterSet& filters() const { return filters_; }

  TransportState apply_transport(const TransportCommand& cmd) { return transport_.apply(cmd); }
  TransportState advance_clock(double wall_dt) { return transport_.advance(wall_dt); }
  void auto_pause() { transport_.auto_pause(); }

  void set_filters(FilterSet filters);

  ReplayFrame frame() const { return resolve(transport_.state().t); }
  ReplayFrame resolve(double t) const;

 private:
  LoadedSet set_;
  Transport transport_;
  FilterSet filters_ = FilterSet::all();
  ResolveOptions options_;
};

}  // namespace sessionscope
