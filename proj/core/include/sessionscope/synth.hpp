#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "sessionscope/model.hpp"

namespace sessionscope {

enum class Scenario { Arena, Patrol, FpsDrill };

std::string_view to_string(Scenario s);
/// "arena", "patrol" or "fps-drill"; throws Error(Argument) otherwise.
Scenario parse_scenario(std::string_view name);

/// Axis-aligned rectangle on the X/Z ground plane, meters.
struct Extent2D {
  double min_x = -5.0;
  double min_z = -5.0;
  double max_x = 5.0;
  double max_z = 5.0;

  bool contains(double x, double z) const {
    return x >= min_x && x <= max_x && z >= min_z && z <= max_z;
  }
};

struct ScenarioSpec {
  Scenario scenario = Scenario::Arena;
  int player_count = 1;
  double duration = 60.0;
  std::uint64_t seed = 0;
  Extent2D extent;
  double sample_hz = 30.0;
};

/// Deterministic stand-in for recorded play: per player a Player object and a
/// head Camera wandering between seeded waypoints under speed and turn-rate
/// limits, periodic inputs, scripted audio cues, and (fps-drill) two tracked
/// hands. Same spec, same log, byte for byte. Every position lies inside the
/// extent.
SessionLog synthesize_session(const ScenarioSpec& spec);

}  // namespace sessionscope
