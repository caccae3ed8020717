#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sessionscope/math.hpp"
#include "sessionscope/wall_time.hpp"

namespace sessionscope {

enum class Category { Player, Camera, Hand, AudioSource, Custom };
enum class HandSide { Left, Right };
enum class InputKind { Button, Joystick, Trigger, Gesture };

std::string_view to_string(Category c);
std::string_view to_string(HandSide s);
std::string_view to_string(InputKind k);
// Throw Error(Parse) on unknown names.
Category parse_category(std::string_view name);
HandSide parse_hand_side(std::string_view name);
InputKind parse_input_kind(std::string_view name);

inline constexpr std::uint32_t kDefaultHandJoints = 26;

struct ObjectDescriptor {
  std::string id;
  std::string display_name;
  Category category = Category::Custom;
  bool dynamic = true;
  // Declared for Hand objects only.
  std::optional<HandSide> side;
  std::optional<std::uint32_t> joint_count;

  friend bool operator==(const ObjectDescriptor&, const ObjectDescriptor&) = default;
};

/// Perspective camera. vfov is the full vertical field of view in radians.
struct CameraParams {
  double vfov = 1.0;
  double aspect = 16.0 / 9.0;
  double near = 0.1;
  double far = 20.0;

  friend bool operator==(const CameraParams&, const CameraParams&) = default;

  bool valid() const;
};

struct PoseSample {
  double t = 0.0;
  std::string object_id;
  Pose pose;

  friend bool operator==(const PoseSample&, const PoseSample&) = default;
};

struct HandFrame {
  double t = 0.0;
  std::string object_id;
  HandSide side = HandSide::Left;
  Pose wrist;
  std::vector<Vec3> joints;

  friend bool operator==(const HandFrame&, const HandFrame&) = default;
};

struct InputEvent {
  double t = 0.0;
  std::string control;
  InputKind kind = InputKind::Button;
  std::string action;
  Vec3 position;
  double value = 1.0;

  friend bool operator==(const InputEvent&, const InputEvent&) = default;
};

struct AudioEvent {
  double t = 0.0;
  std::string clip_name;
  double length = 0.0;
  std::string source_object_id;
  Vec3 position;

  friend bool operator==(const AudioEvent&, const AudioEvent&) = default;
};

struct StaticObject {
  std::string id;
  std::string display_name;
  Pose pose;
  std::optional<Vec3> extent;  // half-extents

  friend bool operator==(const StaticObject&, const StaticObject&) = default;
};

/// One recorded gameplay session. Dynamic objects live in `objects`; statics
/// are kept apart in `statics` and never carry streams.
struct SessionLog {
  std::string session_id;
  std::string game_name;
  WallTime started_at;
  double sample_hz = 30.0;
  std::vector<ObjectDescriptor> objects;
  std::map<std::string, CameraParams> camera_params;
  std::vector<StaticObject> statics;
  std::map<std::string, std::vector<PoseSample>> samples;
  std::map<std::string, std::vector<HandFrame>> hands;
  std::vector<InputEvent> inputs;
  std::vector<AudioEvent> audio;
  double duration = 0.0;

  friend bool operator==(const SessionLog&, const SessionLog&) = default;

  const ObjectDescriptor* find_object(std::string_view id) const;
  const StaticObject* find_static(std::string_view id) const;
  std::size_t total_pose_samples() const;
  /// Largest timestamp over every stream and event list; 0 when empty.
  double max_timestamp() const;
};

}  // namespace sessionscope
