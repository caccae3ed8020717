#include "sessionscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "sessionscope/error.hpp"
#include "sessionscope/recorder.hpp"
#include "sessionscope/rng.hpp"

namespace sessionscope {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEyeHeight = 1.6;
constexpr double kWalkSpeed = 1.4;       // m/s
constexpr double kTurnRate = 2.0 * kPi / 3.0;  // rad/s
constexpr double kArrivalRadius = 0.3;
// 2024-05-01T10:00:00Z; synthesized sessions start here plus seed seconds.
constexpr std::int64_t kEpochMs = 1714557600000;

const CameraParams kHeadCamera{0.5236, 1.5, 0.1, 20.0};

double wrap_angle(double a) {
  while (a > kPi) a -= 2.0 * kPi;
  while (a < -kPi) a += 2.0 * kPi;
  return a;
}

struct Rect {
  double min_x, min_z, max_x, max_z;
  double width() const { return max_x - min_x; }
  double depth() const { return max_z - min_z; }
  double cx() const { return 0.5 * (min_x + max_x); }
  double cz() const { return 0.5 * (min_z + max_z); }
};

Rect inset(const Extent2D& e) {
  const double margin = std::min(1.0, 0.25 * std::min(e.max_x - e.min_x, e.max_z - e.min_z));
  return {e.min_x + margin, e.min_z + margin, e.max_x - margin, e.max_z - margin};
}

class Clamp {
 public:
  explicit Clamp(const Extent2D& e) : e_(e) {}
  Vec3 operator()(Vec3 p) const {
    p.x = std::clamp(p.x, e_.min_x, e_.max_x);
    p.z = std::clamp(p.z, e_.min_z, e_.max_z);
    return p;
  }

 private:
  Extent2D e_;
};

/// Ground agent steering toward a waypoint under speed and turn-rate limits.
struct Walker {
  double x = 0.0;
  double z = 0.0;
  double heading = 0.0;  // yaw; 0 faces +z
  double speed = kWalkSpeed;
  double target_x = 0.0;
  double target_z = 0.0;

  /// Returns true when the waypoint was reached during this step.
  bool step(double dt) {
    const double dx = target_x - x;
    const double dz = target_z - z;
    const double dist = std::hypot(dx, dz);
    if (dist <= kArrivalRadius) return true;
    const double desired = std::atan2(dx, dz);
    const double turn = std::clamp(wrap_angle(desired - heading), -kTurnRate * dt, kTurnRate * dt);
    heading = wrap_angle(heading + turn);
    // Slow down while facing away from the target.
    const double alignment = std::max(0.2, std::cos(wrap_angle(desired - heading)));
    const double travel = std::min(dist, speed * alignment * dt);
    x += travel * std::sin(heading);
    z += travel * std::cos(heading);
    return std::hypot(target_x - x, target_z - z) <= kArrivalRadius;
  }

  Vec3 position(double y = 0.0) const { return {x, y, z}; }
  Quat orientation() const { return canonicalize_quaternion(from_yaw_pitch(heading, 0.0)); }
};

struct PendingEvent {
  double t;
  std::size_t order;
  std::function<void(Recorder&)> emit;
};

struct PlayerAgent {
  std::string player_id;
  std::string camera_id;
  std::string left_hand_id;
  std::string right_hand_id;
  Walker walker;
  SplitMix64 rng{0};
  double look_phase = 0.0;
  double look_amplitude = 0.0;
  double next_input_t = 0.0;
  std::size_t patrol_index = 0;
  double home_x = 0.0;
  double home_z = 0.0;
};

class Synthesizer {
 public:
  explicit Synthesizer(const ScenarioSpec& spec)
      : spec_(spec),
        rng_(spec.seed ^ (0x5e55105c09eULL + static_cast<std::uint64_t>(spec.scenario))),
        area_(inset(spec.extent)),
        clamp_(spec.extent),
        recorder_(make_config(spec)) {}

  SessionLog run() {
    register_statics();
    register_players();
    register_scenario_objects();
    recorder_.tick(0.0);

    const double period = 1.0 / spec_.sample_hz;
    const std::uint64_t last = last_instant();
    for (std::uint64_t k = 1; k <= last; ++k) {
      const double t = static_cast<double>(k) / spec_.sample_hz;
      advance_world(t, period);
      flush_events(t);
      recorder_.tick(t - recorder_.clock());
    }
    flush_events(spec_.duration);
    if (spec_.duration > recorder_.clock()) recorder_.tick(spec_.duration - recorder_.clock());
    return recorder_.finish();
  }

 private:
  static RecordingConfig make_config(const ScenarioSpec& spec) {
    RecordingConfig c;
    c.sample_hz = spec.sample_hz;
    c.session_id = std::string(to_string(spec.scenario)) + "-" + std::to_string(spec.seed);
    c.game_name = "synthetic-" + std::string(to_string(spec.scenario));
    c.started_at = {kEpochMs + static_cast<std::int64_t>(spec.seed % 1000000) * 1000};
    return c;
  }

  std::uint64_t last_instant() const {
    auto k = static_cast<std::uint64_t>(std::floor(spec_.duration * spec_.sample_hz));
    while (static_cast<double>(k + 1) / spec_.sample_hz <= spec_.duration) ++k;
    while (k > 0 && static_cast<double>(k) / spec_.sample_hz > spec_.duration) --k;
    return k;
  }

  void schedule(double t, std::function<void(Recorder&)> emit) {
    pending_.push_back({t, seq_++, std::move(emit)});
  }

  void flush_events(double until) {
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const PendingEvent& a, const PendingEvent& b) {
                       return a.t < b.t || (a.t == b.t && a.order < b.order);
                     });
    std::size_t done = 0;
    for (; done < pending_.size() && pending_[done].t <= until; ++done) {
      const double dt = pending_[done].t - recorder_.clock();
      if (dt > 0.0) recorder_.tick(dt);
      pending_[done].emit(recorder_);
    }
    pending_.erase(pending_.begin(), pending_.begin() + static_cast<std::ptrdiff_t>(done));
  }

  void register_statics() {
    const auto& e = spec_.extent;
    const double cx = 0.5 * (e.min_x + e.max_x);
    const double cz = 0.5 * (e.min_z + e.max_z);
    const double hw = 0.5 * (e.max_x - e.min_x);
    const double hd = 0.5 * (e.max_z - e.min_z);
    const double wall_h = 1.5;
    const Quat q = Quat::identity();
    auto wall = [&](const char* id, const char* name, Vec3 p, Vec3 half) {
      recorder_.track_object({id, name, Category::Custom, false, {}, {}}, {p, q}, {}, half);
    };
    wall("wall_north", "North wall", {cx, wall_h, e.max_z}, {hw, wall_h, 0.0});
    wall("wall_south", "South wall", {cx, wall_h, e.min_z}, {hw, wall_h, 0.0});
    wall("wall_east", "East wall", {e.max_x, wall_h, cz}, {0.0, wall_h, hd});
    wall("wall_west", "West wall", {e.min_x, wall_h, cz}, {0.0, wall_h, hd});

    if (spec_.scenario == Scenario::FpsDrill) {
      for (int i = 0; i < 4; ++i) {
        const Vec3 p = clamp_({rng_.uniform(area_.min_x, area_.max_x), 1.2,
                               rng_.uniform(area_.min_z, area_.max_z)});
        const std::string id = "target_" + std::to_string(i);
        recorder_.track_object({id, "Target " + std::to_string(i), Category::Custom, false, {}, {}},
                               {p, q}, {}, Vec3{0.3, 0.3, 0.05});
      }
    }
  }

  void pick_waypoint(PlayerAgent& a) {
    Walker& w = a.walker;
    switch (spec_.scenario) {
      case Scenario::Arena:
        w.target_x = a.rng.uniform(area_.min_x, area_.max_x);
        w.target_z = a.rng.uniform(area_.min_z, area_.max_z);
        break;
      case Scenario::Patrol: {
        a.patrol_index = (a.patrol_index + 1) % 4;
        const double jx = a.rng.uniform(-0.3, 0.3);
        const double jz = a.rng.uniform(-0.3, 0.3);
        const double cx = (a.patrol_index == 0 || a.patrol_index == 3) ? area_.min_x : area_.max_x;
        const double cz = a.patrol_index < 2 ? area_.min_z : area_.max_z;
        w.target_x = std::clamp(cx + jx, area_.min_x, area_.max_x);
        w.target_z = std::clamp(cz + jz, area_.min_z, area_.max_z);
        break;
      }
      case Scenario::FpsDrill: {
        const double r = 0.15 * std::min(area_.width(), area_.depth());
        w.target_x = std::clamp(a.home_x + a.rng.uniform(-r, r), area_.min_x, area_.max_x);
        w.target_z = std::clamp(a.home_z + a.rng.uniform(-r, r), area_.min_z, area_.max_z);
        break;
      }
    }
  }

  Quat head_orientation(const PlayerAgent& a, double t) const {
    const double yaw = a.walker.heading + a.look_amplitude * std::sin(0.7 * t + a.look_phase);
    const double pitch = 0.15 * std::sin(0.4 * t + 2.0 * a.look_phase);
    return canonicalize_quaternion(from_yaw_pitch(yaw, pitch));
  }

  Pose wrist_pose(const PlayerAgent& a, double side_sign, double t) const {
    const Quat body = from_yaw_pitch(a.walker.heading, 0.0);
    const double sway = 0.05 * std::sin(2.0 * t + a.look_phase + side_sign);
    const Vec3 offset = rotate(body, {0.2 * side_sign, 1.2 + sway, 0.35});
    return {clamp_(a.walker.position() + offset), canonicalize_quaternion(body)};
  }

  std::vector<Vec3> hand_joints(const Pose& wrist, double side_sign, double t,
                                std::uint32_t count) const {
    std::vector<Vec3> joints;
    joints.reserve(count);
    const double curl = 0.5 + 0.5 * std::sin(3.0 * t + side_sign);
    for (std::uint32_t j = 0; j < count; ++j) {
      if (j == 0) {
        joints.push_back(wrist.position);  // palm root
        continue;
      }
      const double finger = static_cast<double>((j - 1) / 5) - 2.0;
      const double segment = static_cast<double>((j - 1) % 5) + 1.0;
      const Vec3 local{0.02 * finger * side_sign, -0.01 * segment * curl,
                       0.02 * segment * (1.0 - 0.3 * curl)};
      joints.push_back(clamp_(wrist.position + rotate(wrist.orientation, local)));
    }
    return joints;
  }

  void register_players() {
    for (int i = 0; i < spec_.player_count; ++i) {
      PlayerAgent a;
      const std::string n = std::to_string(i);
      a.player_id = "player_" + n;
      a.camera_id = "camera_" + n;
      a.rng = rng_.split();
      a.look_phase = a.rng.uniform(0.0, 2.0 * kPi);
      a.look_amplitude = a.rng.uniform(0.2, 0.6);
      a.next_input_t = a.rng.uniform(0.5, 2.0);
      a.walker.speed = kWalkSpeed * a.rng.uniform(0.6, 1.0);

      if (spec_.scenario == Scenario::Patrol) {
        a.patrol_index = static_cast<std::size_t>(i) % 4;
        a.walker.x = (a.patrol_index == 0 || a.patrol_index == 3) ? area_.min_x : area_.max_x;
        a.walker.z = a.patrol_index < 2 ? area_.min_z : area_.max_z;
      } else {
        a.walker.x = a.rng.uniform(area_.min_x, area_.max_x);
        a.walker.z = a.rng.uniform(area_.min_z, area_.max_z);
      }
      a.home_x = a.walker.x;
      a.home_z = a.walker.z;
      a.walker.heading = a.rng.uniform(-kPi, kPi);
      pick_waypoint(a);

      recorder_.track_object({a.player_id, "Player " + n, Category::Player, true, {}, {}},
                             {a.walker.position(), a.walker.orientation()});
      recorder_.track_object({a.camera_id, "Main camera " + n, Category::Camera, true, {}, {}},
                             {a.walker.position(kEyeHeight), head_orientation(a, 0.0)},
                             kHeadCamera);
      if (spec_.scenario == Scenario::FpsDrill) {
        a.left_hand_id = "hand_l_" + n;
        a.right_hand_id = "hand_r_" + n;
        recorder_.track_object({a.left_hand_id, "Left hand " + n, Category::Hand, true,
                                HandSide::Left, kDefaultHandJoints},
                               wrist_pose(a, -1.0, 0.0));
        recorder_.track_object({a.right_hand_id, "Right hand " + n, Category::Hand, true,
                                HandSide::Right, kDefaultHandJoints},
                               wrist_pose(a, 1.0, 0.0));
        update_hands(a, 0.0);
      }
      players_.push_back(std::move(a));
    }
  }

  void update_hands(const PlayerAgent& a, double t) {
    const Pose left = wrist_pose(a, -1.0, t);
    const Pose right = wrist_pose(a, 1.0, t);
    recorder_.update_hand(a.left_hand_id, left, hand_joints(left, -1.0, t, kDefaultHandJoints));
    recorder_.update_hand(a.right_hand_id, right, hand_joints(right, 1.0, t, kDefaultHandJoints));
  }

  void register_scenario_objects() {
    const double cx = area_.cx();
    const double cz = area_.cz();
    switch (spec_.scenario) {
      case Scenario::Arena:
        orbit_radius_ = 0.3 * std::min(area_.width(), area_.depth());
        recorder_.track_object({"orb", "Floating orb", Category::Custom, true, {}, {}},
                               {clamp_({cx + orbit_radius_, 1.0, cz}), Quat::identity()});
        break;
      case Scenario::Patrol:
        guard_.x = area_.max_x;
        guard_.z = area_.max_z;
        guard_.speed = 0.9;
        guard_.target_x = area_.max_x;
        guard_.target_z = area_.min_z;
        recorder_.track_object({"guard", "Zombie guard", Category::AudioSource, true, {}, {}},
                               {guard_.position(), guard_.orientation()});
        break;
      case Scenario::FpsDrill:
        break;
    }
  }

  void emit_input_for(PlayerAgent& a, double t) {
    InputEvent e;
    e.position = clamp_(a.walker.position());
    switch (spec_.scenario) {
      case Scenario::Arena:
        if (a.rng.below(2) == 0) {
          e.control = "button_a";
          e.kind = InputKind::Button;
          e.action = "interact";
          e.value = 1.0;
        } else {
          e.control = "left_stick";
          e.kind = InputKind::Joystick;
          e.action = "move";
          e.value = a.rng.uniform(-1.0, 1.0);
        }
        break;
      case Scenario::Patrol:
        e.control = "air_tap";
        e.kind = InputKind::Gesture;
        e.action = "inspect";
        e.value = 1.0;
        break;
      case Scenario::FpsDrill:
        e.control = "right_trigger";
        e.kind = InputKind::Trigger;
        e.action = "fire";
        e.value = 1.0;
        break;
    }
    const std::string source = a.player_id;
    const Vec3 where = e.position;
    const bool fire = spec_.scenario == Scenario::FpsDrill;
    schedule(t, [e = std::move(e)](Recorder& r) { r.emit_input(e); });
    if (fire) {
      schedule(t, [source, where](Recorder& r) {
        r.emit_audio({0.0, "gunshot", 0.4, source, where});
      });
    }
  }

  void advance_world(double t, double period) {
    const double t_prev = t - period;
    for (auto& a : players_) {
      if (a.walker.step(period)) {
        pick_waypoint(a);
        if (spec_.scenario == Scenario::Arena) {
          const double when = t_prev + a.rng.unit() * period;
          const Vec3 where = clamp_(a.walker.position());
          const std::string source = a.player_id;
          schedule(when, [source, where](Recorder& r) {
            r.emit_audio({0.0, "checkpoint_chime", 1.2, source, where});
          });
        }
      }
      recorder_.update_pose(a.player_id, {clamp_(a.walker.position()), a.walker.orientation()});
      recorder_.update_pose(a.camera_id,
                            {clamp_(a.walker.position(kEyeHeight)), head_orientation(a, t)});
      if (spec_.scenario == Scenario::FpsDrill) update_hands(a, t);

      while (a.next_input_t <= t) {
        emit_input_for(a, a.next_input_t);
        const double gap = spec_.scenario == Scenario::FpsDrill ? a.rng.uniform(0.5, 1.5)
                                                                : a.rng.uniform(1.0, 3.0);
        a.next_input_t += gap;
      }
    }

    switch (spec_.scenario) {
      case Scenario::Arena: {
        const double angle = 0.5 * t;
        const Vec3 p = clamp_({area_.cx() + orbit_radius_ * std::cos(angle), 1.0,
                               area_.cz() + orbit_radius_ * std::sin(angle)});
        recorder_.update_pose("orb", {p, canonicalize_quaternion(from_yaw_pitch(-angle, 0.0))});
        while (next_cue_t_ <= t) {
          schedule(next_cue_t_, [p](Recorder& r) { r.emit_audio({0.0, "orb_hum", 2.0, "orb", p}); });
          next_cue_t_ += 5.0;
        }
        break;
      }
      case Scenario::Patrol: {
        if (guard_.step(period)) {
          guard_corner_ = (guard_corner_ + 3) % 4;  // walk the loop backwards
          guard_.target_x = (guard_corner_ == 0 || guard_corner_ == 3) ? area_.min_x : area_.max_x;
          guard_.target_z = guard_corner_ < 2 ? area_.min_z : area_.max_z;
        }
        const Vec3 p = clamp_(guard_.position());
        recorder_.update_pose("guard", {p, guard_.orientation()});
        while (next_cue_t_ <= t) {
          schedule(next_cue_t_,
                   [p](Recorder& r) { r.emit_audio({0.0, "zombie_growl", 2.0, "guard", p}); });
          next_cue_t_ += 7.0;
        }
        break;
      }
      case Scenario::FpsDrill:
        break;
    }
  }

  ScenarioSpec spec_;
  SplitMix64 rng_;
  Rect area_;
  Clamp clamp_;
  Recorder recorder_;
  std::vector<PlayerAgent> players_;
  std::vector<PendingEvent> pending_;
  std::size_t seq_ = 0;
  double orbit_radius_ = 0.0;
  Walker guard_;
  std::size_t guard_corner_ = 1;
  double next_cue_t_ = 2.5;
};

}  // namespace

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::Arena: return "arena";
    case Scenario::Patrol: return "patrol";
    case Scenario::FpsDrill: return "fps-drill";
  }
  return "arena";
}

Scenario parse_scenario(std::string_view name) {
  for (auto s : {Scenario::Arena, Scenario::Patrol, Scenario::FpsDrill}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorKind::Argument, "unknown scenario '" + std::string(name) + "'");
}

SessionLog synthesize_session(const ScenarioSpec& spec) {
  if (!(spec.duration > 0.0) || !std::isfinite(spec.duration)) {
    throw Error(ErrorKind::Argument, "scenario duration must be positive");
  }
  if (spec.player_count < 1) throw Error(ErrorKind::Argument, "player_count must be >= 1");
  if (!(spec.extent.max_x > spec.extent.min_x) || !(spec.extent.max_z > spec.extent.min_z)) {
    throw Error(ErrorKind::Argument, "scenario extent must have positive area");
  }
  return Synthesizer(spec).run();
}

}  // namespace sessionscope
