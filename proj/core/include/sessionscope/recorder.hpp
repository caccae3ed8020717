#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sessionscope/model.hpp"

namespace sessionscope {

struct RecordingConfig {
  double sample_hz = 30.0;
  std::string session_id = "session";
  std::string game_name = "game";
  WallTime started_at = WallTime::now();
};

/// Fixed-interval recorder a game loop drives.
///
/// Dynamic objects hold a latest-pose register; `tick` advances the clock and,
/// for every sampler instant k/sample_hz crossed, logs one sample per
/// registered dynamic object (hands log a HandFrame), all stamped with the
/// same instant. Events are logged immediately at the current clock value.
/// Statics are captured once, in `finish`.
///
/// Single owner: calls on one Recorder must be externally serialized.
class Recorder {
 public:
  explicit Recorder(RecordingConfig config);

  /// Current recording clock, seconds.
  double clock() const { return clock_; }
  double sample_period() const { return 1.0 / config_.sample_hz; }
  bool finished() const { return finished_; }

  void track_object(const ObjectDescriptor& descriptor, const Pose& initial_pose,
                    std::optional<CameraParams> camera = std::nullopt,
                    std::optional<Vec3> extent = std::nullopt);

  void update_pose(const std::string& object_id, const Pose& pose);
  void update_hand(const std::string& object_id, const Pose& wrist, std::span<const Vec3> joints);

  /// `event.t` is overwritten with the current clock.
  void emit_input(InputEvent event);
  void emit_audio(AudioEvent event);

  /// Advances the clock by `dt` seconds and returns the number of records
  /// (pose samples + hand frames) logged by this call.
  std::size_t tick(double dt);

  /// Captures statics, stamps the duration and hands the log over. A second
  /// call throws Error(State).
  SessionLog finish();

 private:
  struct Tracked {
    ObjectDescriptor descriptor;
    Pose pose;
    std::vector<Vec3> joints;
  };

  double instant(std::uint64_t k) const { return static_cast<double>(k) / config_.sample_hz; }
  Tracked& dynamic_entry(const std::string& object_id);
  void require_active() const;
  void sample_at(std::uint64_t k);

  RecordingConfig config_;
  SessionLog log_;
  double clock_ = 0.0;
  std::uint64_t next_instant_ = 0;
  bool finished_ = false;
  std::vector<std::string> order_;  // dynamic ids in registration order
  std::unordered_map<std::string, Tracked> dynamic_;
  std::vector<StaticObject> statics_;
};

inline Recorder start_recording(RecordingConfig config) { return Recorder(std::move(config)); }

}  // namespace sessionscope
