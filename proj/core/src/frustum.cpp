#include "sessionscope/frustum.hpp"

#include <cmath>

#include "sessionscope/error.hpp"

namespace sessionscope {

namespace {

Plane through(const Vec3& normal, const Vec3& point) {
  const Vec3 n = (1.0 / norm(normal)) * normal;
  return {n, -dot(n, point)};
}

}  // namespace

bool Frustum::contains(const Vec3& p) const {
  for (const auto& plane : planes) {
    if (plane.signed_distance(p) < 0.0) return false;
  }
  return true;
}

Frustum build_frustum(const Pose& pose, const CameraParams& params) {
  if (!params.valid()) throw Error(ErrorKind::Argument, "invalid camera parameters");
  const Quat q = canonicalize_quaternion(pose.orientation);
  const Vec3 f = forward(q);
  const Vec3 r = right(q);
  const Vec3 u = up(q);
  const Vec3& apex = pose.position;
  const double tan_v = std::tan(params.vfov / 2.0);
  const double tan_h = params.aspect * tan_v;

  Frustum out;
  auto set = [&](FrustumPlane which, Plane p) { out.planes[static_cast<std::size_t>(which)] = p; };
  set(FrustumPlane::Near, through(f, apex + params.near * f));
  set(FrustumPlane::Far, through(-f, apex + params.far * f));
  // Side planes pass through the apex: |x| <= z*tan_h, |y| <= z*tan_v.
  set(FrustumPlane::Left, through(tan_h * f + r, apex));
  set(FrustumPlane::Right, through(tan_h * f - r, apex));
  set(FrustumPlane::Bottom, through(tan_v * f + u, apex));
  set(FrustumPlane::Top, through(tan_v * f - u, apex));
  return out;
}

}  // namespace sessionscope
