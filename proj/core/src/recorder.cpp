#include "sessionscope/recorder.hpp"

#include <algorithm>
#include <cmath>

#include "sessionscope/error.hpp"

namespace sessionscope {

namespace {

// Clock values this close (relative) to a sampler instant snap onto it, so a
// clock built from repeated dt additions still lands on k/hz exactly.
constexpr double kSnapRelative = 1e-9;

}  // namespace

Recorder::Recorder(RecordingConfig config) : config_(std::move(config)) {
  if (!(config_.sample_hz > 0.0) || !std::isfinite(config_.sample_hz)) {
    throw Error(ErrorKind::Argument, "sample_hz must be positive");
  }
  log_.session_id = config_.session_id;
  log_.game_name = config_.game_name;
  log_.started_at = config_.started_at;
  log_.sample_hz = config_.sample_hz;
}

void Recorder::require_active() const {
  if (finished_) throw Error(ErrorKind::State, "recording already finished");
}

void Recorder::track_object(const ObjectDescriptor& descriptor, const Pose& initial_pose,
                            std::optional<CameraParams> camera, std::optional<Vec3> extent) {
  require_active();
  const std::string& id = descriptor.id;
  if (id.empty()) throw Error(ErrorKind::Registration, "object id must be non-empty");
  const bool taken = dynamic_.contains(id) ||
                     std::any_of(statics_.begin(), statics_.end(),
                                 [&](const StaticObject& s) { return s.id == id; });
  if (taken) throw Error(ErrorKind::Registration, "object '" + id + "' already registered");
  if (descriptor.category == Category::Camera && !camera) {
    throw Error(ErrorKind::MissingParams, "camera '" + id + "' registered without camera params");
  }
  if (camera && !camera->valid()) {
    throw Error(ErrorKind::Argument, "camera '" + id + "' has invalid parameters");
  }
  const Pose pose{initial_pose.position, canonicalize_quaternion(initial_pose.orientation)};

  if (!descriptor.dynamic) {
    statics_.push_back({id, descriptor.display_name, pose, extent});
    return;
  }

  Tracked tracked{descriptor, pose, {}};
  if (descriptor.category == Category::Hand) {
    if (!tracked.descriptor.side) tracked.descriptor.side = HandSide::Left;
    if (!tracked.descriptor.joint_count) tracked.descriptor.joint_count = kDefaultHandJoints;
    tracked.joints.assign(*tracked.descriptor.joint_count, pose.position);
  } else {
    tracked.descriptor.side.reset();
    tracked.descriptor.joint_count.reset();
  }
  log_.objects.push_back(tracked.descriptor);
  if (camera) log_.camera_params.emplace(id, *camera);
  order_.push_back(id);
  dynamic_.emplace(id, std::move(tracked));
}

Recorder::Tracked& Recorder::dynamic_entry(const std::string& object_id) {
  auto it = dynamic_.find(object_id);
  if (it == dynamic_.end()) {
    throw Error(ErrorKind::Reference, "'" + object_id + "' is not a registered dynamic object");
  }
  return it->second;
}

void Recorder::update_pose(const std::string& object_id, const Pose& pose) {
  require_active();
  Tracked& entry = dynamic_entry(object_id);
  if (!is_finite(pose.position)) throw Error(ErrorKind::Argument, "non-finite position");
  entry.pose = {pose.position, canonicalize_quaternion(pose.orientation)};
}

void Recorder::update_hand(const std::string& object_id, const Pose& wrist,
                           std::span<const Vec3> joints) {
  require_active();
  Tracked& entry = dynamic_entry(object_id);
  if (entry.descriptor.category != Category::Hand) {
    throw Error(ErrorKind::Reference, "'" + object_id + "' is not a hand");
  }
  if (joints.size() != entry.joints.size()) {
    throw Error(ErrorKind::JointCount, "hand '" + object_id + "' expects " +
                                           std::to_string(entry.joints.size()) + " joints, got " +
                                           std::to_string(joints.size()));
  }
  entry.pose = {wrist.position, canonicalize_quaternion(wrist.orientation)};
  entry.joints.assign(joints.begin(), joints.end());
}

void Recorder::emit_input(InputEvent event) {
  require_active();
  event.t = clock_;
  log_.inputs.push_back(std::move(event));
}

void Recorder::emit_audio(AudioEvent event) {
  require_active();
  const std::string& src = event.source_object_id;
  const bool known = dynamic_.contains(src) ||
                     std::any_of(statics_.begin(), statics_.end(),
                                 [&](const StaticObject& s) { return s.id == src; });
  if (!known) throw Error(ErrorKind::Reference, "audio source '" + src + "' is not registered");
  event.t = clock_;
  log_.audio.push_back(std::move(event));
}

void Recorder::sample_at(std::uint64_t k) {
  const double t = instant(k);
  for (const auto& id : order_) {
    const Tracked& entry = dynamic_.at(id);
    if (entry.descriptor.category == Category::Hand) {
      log_.hands[id].push_back({t, id, *entry.descriptor.side, entry.pose, entry.joints});
    } else {
      log_.samples[id].push_back({t, id, entry.pose});
    }
  }
}

std::size_t Recorder::tick(double dt) {
  require_active();
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::Argument, "tick dt must be >= 0");
  clock_ += dt;

  // Snap onto the nearest instant when within rounding distance.
  const double nearest = std::round(clock_ * config_.sample_hz);
  const double snapped = nearest / config_.sample_hz;
  if (std::abs(clock_ - snapped) <= kSnapRelative * std::max(1.0, clock_)) clock_ = snapped;

  std::size_t logged = 0;
  while (instant(next_instant_) <= clock_) {
    sample_at(next_instant_);
    logged += order_.size();
    ++next_instant_;
  }
  return logged;
}

SessionLog Recorder::finish() {
  require_active();
  finished_ = true;
  log_.statics = std::move(statics_);
  log_.duration = clock_;
  return std::move(log_);
}

}  // namespace sessionscope
