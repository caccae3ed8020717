#include "sessionscope/math.hpp"

#include <algorithm>

#include "sessionscope/error.hpp"

namespace sessionscope {

namespace {

constexpr double kSlerpLinearThreshold = 1e-5;
constexpr double kFixedPointSlack = 1e-15;

void require_unit(const Quat& q, const char* what) {
  if (!is_finite(q) || std::abs(norm(q) - 1.0) > kUnitTolerance) {
    throw Error(ErrorKind::InvalidOrientation, std::string(what) + " is not a unit quaternion");
  }
}

Quat scaled(const Quat& q, double s) { return {q.x * s, q.y * s, q.z * s, q.w * s}; }

Quat normalized(const Quat& q) { return scaled(q, 1.0 / norm(q)); }

}  // namespace

Quat canonicalize_quaternion(const Quat& q) {
  if (!is_finite(q)) {
    throw Error(ErrorKind::InvalidOrientation, "quaternion has non-finite components");
  }
  const double n = norm(q);
  if (!(n > 0.0)) {
    throw Error(ErrorKind::InvalidOrientation, "zero-norm quaternion");
  }
  // Inputs already unit to rounding are kept as-is so the result is a fixed
  // point of this function.
  Quat out = std::abs(n - 1.0) <= kFixedPointSlack ? q : scaled(q, 1.0 / n);
  if (out.w < 0.0) out = scaled(out, -1.0);
  if (out.w == 0.0) out.w = 0.0;  // drop -0
  return out;
}

Vec3 lerp_position(const Vec3& p0, const Vec3& p1, double u) {
  return {(1.0 - u) * p0.x + u * p1.x, (1.0 - u) * p0.y + u * p1.y,
          (1.0 - u) * p0.z + u * p1.z};
}

Quat slerp_orientation(const Quat& q0, const Quat& q1, double u) {
  require_unit(q0, "slerp start");
  require_unit(q1, "slerp end");
  if (u == 0.0 || q0 == q1) return q0;

  Quat end = q1;
  double cos_half = dot(q0, q1);
  if (cos_half < 0.0) {
    end = scaled(q1, -1.0);
    cos_half = -cos_half;
  }
  if (u == 1.0) return end;
  cos_half = std::min(cos_half, 1.0);
  const double half_angle = std::acos(cos_half);

  if (2.0 * half_angle < kSlerpLinearThreshold) {
    return normalized({(1.0 - u) * q0.x + u * end.x, (1.0 - u) * q0.y + u * end.y,
                       (1.0 - u) * q0.z + u * end.z, (1.0 - u) * q0.w + u * end.w});
  }
  const double sin_half = std::sin(half_angle);
  const double a = std::sin((1.0 - u) * half_angle) / sin_half;
  const double b = std::sin(u * half_angle) / sin_half;
  return normalized({a * q0.x + b * end.x, a * q0.y + b * end.y, a * q0.z + b * end.z,
                     a * q0.w + b * end.w});
}

Quat multiply(const Quat& a, const Quat& b) {
  return {a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
          a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z};
}

Quat from_axis_angle(const Vec3& axis, double angle_rad) {
  const double n = norm(axis);
  if (!(n > 0.0)) throw Error(ErrorKind::Argument, "rotation axis has zero length");
  const double s = std::sin(angle_rad / 2.0) / n;
  return {axis.x * s, axis.y * s, axis.z * s, std::cos(angle_rad / 2.0)};
}

Quat from_yaw_pitch(double yaw_rad, double pitch_rad) {
  // Positive pitch looks up: rotation about +x tips +z towards -y, so negate.
  return multiply(from_axis_angle({0.0, 1.0, 0.0}, yaw_rad),
                  from_axis_angle({1.0, 0.0, 0.0}, -pitch_rad));
}

Vec3 rotate(const Quat& q, const Vec3& v) {
  const Vec3 u{q.x, q.y, q.z};
  const Vec3 t = 2.0 * cross(u, v);
  return v + q.w * t + cross(u, t);
}

std::array<double, 9> rotation_matrix(const Quat& q) {
  const double xx = q.x * q.x, yy = q.y * q.y, zz = q.z * q.z;
  const double xy = q.x * q.y, xz = q.x * q.z, yz = q.y * q.z;
  const double wx = q.w * q.x, wy = q.w * q.y, wz = q.w * q.z;
  return {1 - 2 * (yy + zz), 2 * (xy - wz),     2 * (xz + wy),
          2 * (xy + wz),     1 - 2 * (xx + zz), 2 * (yz - wx),
          2 * (xz - wy),     2 * (yz + wx),     1 - 2 * (xx + yy)};
}

}  // namespace sessionscope
