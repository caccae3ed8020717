#include "sessionscope/model.hpp"

#include <algorithm>
#include <numbers>

#include "sessionscope/error.hpp"

namespace sessionscope {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Player: return "Player";
    case Category::Camera: return "Camera";
    case Category::Hand: return "Hand";
    case Category::AudioSource: return "AudioSource";
    case Category::Custom: return "Custom";
  }
  return "Custom";
}

std::string_view to_string(HandSide s) { return s == HandSide::Left ? "Left" : "Right"; }

std::string_view to_string(InputKind k) {
  switch (k) {
    case InputKind::Button: return "Button";
    case InputKind::Joystick: return "Joystick";
    case InputKind::Trigger: return "Trigger";
    case InputKind::Gesture: return "Gesture";
  }
  return "Button";
}

Category parse_category(std::string_view name) {
  for (auto c : {Category::Player, Category::Camera, Category::Hand, Category::AudioSource,
                 Category::Custom}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::Parse, "unknown category '" + std::string(name) + "'");
}

HandSide parse_hand_side(std::string_view name) {
  if (name == "Left") return HandSide::Left;
  if (name == "Right") return HandSide::Right;
  throw Error(ErrorKind::Parse, "unknown hand side '" + std::string(name) + "'");
}

InputKind parse_input_kind(std::string_view name) {
  for (auto k : {InputKind::Button, InputKind::Joystick, InputKind::Trigger, InputKind::Gesture}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::Parse, "unknown input kind '" + std::string(name) + "'");
}

bool CameraParams::valid() const {
  return vfov > 0.0 && vfov < std::numbers::pi && aspect > 0.0 && std::isfinite(aspect) &&
         near > 0.0 && near < far && std::isfinite(far);
}

const ObjectDescriptor* SessionLog::find_object(std::string_view id) const {
  auto it = std::find_if(objects.begin(), objects.end(),
                         [&](const ObjectDescriptor& d) { return d.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

const StaticObject* SessionLog::find_static(std::string_view id) const {
  auto it = std::find_if(statics.begin(), statics.end(),
                         [&](const StaticObject& s) { return s.id == id; });
  return it == statics.end() ? nullptr : &*it;
}

std::size_t SessionLog::total_pose_samples() const {
  std::size_t n = 0;
  for (const auto& [id, stream] : samples) n += stream.size();
  return n;
}

double SessionLog::max_timestamp() const {
  double m = 0.0;
  for (const auto& [id, stream] : samples) {
    for (const auto& s : stream) m = std::max(m, s.t);
  }
  for (const auto& [id, stream] : hands) {
    for (const auto& h : stream) m = std::max(m, h.t);
  }
  for (const auto& e : inputs) m = std::max(m, e.t);
  for (const auto& e : audio) m = std::max(m, e.t);
  return m;
}

}  // namespace sessionscope
