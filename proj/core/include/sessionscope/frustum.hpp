#pragma once

#include <array>

#include "sessionscope/model.hpp"

namespace sessionscope {

/// Oriented plane; points with signed_distance >= 0 are on the kept side.
struct Plane {
  Vec3 normal;  // unit length
  double offset = 0.0;

  double signed_distance(const Vec3& p) const { return dot(normal, p) + offset; }
};

enum class FrustumPlane { Near = 0, Far, Left, Right, Top, Bottom };

/// Truncated view pyramid of a camera: apex at the camera position, axis
/// along the pose's forward (+z), vertical half-angle vfov/2 and horizontal
/// half-angle atan(aspect * tan(vfov/2)). Normals point inward.
struct Frustum {
  std::array<Plane, 6> planes;

  const Plane& plane(FrustumPlane which) const { return planes[static_cast<std::size_t>(which)]; }
  /// Closed volume: points on a boundary plane are inside.
  bool contains(const Vec3& p) const;
};

/// Throws Error(Argument) for invalid camera parameters and
/// Error(InvalidOrientation) for a zero orientation.
Frustum build_frustum(const Pose& pose, const CameraParams& params);

inline bool frustum_contains(const Frustum& f, const Vec3& p) { return f.contains(p); }

}  // namespace sessionscope
