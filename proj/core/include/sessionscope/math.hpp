#pragma once

#include <array>
#include <cmath>

namespace sessionscope {

/// World-space vector in meters. y is up; x/z span the ground plane.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
  friend Vec3 operator*(const Vec3& v, double s) { return s * v; }
  friend Vec3 operator-(const Vec3& v) { return {-v.x, -v.y, -v.z}; }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline bool is_finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Quaternion stored as (x, y, z, w).
struct Quat {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  friend bool operator==(const Quat&, const Quat&) = default;

  static Quat identity() { return {}; }
};

inline double dot(const Quat& a, const Quat& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z + a.w * b.w;
}
inline double norm(const Quat& q) { return std::sqrt(dot(q, q)); }
inline bool is_finite(const Quat& q) {
  return std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z) && std::isfinite(q.w);
}

/// Tolerance on |q| - 1 for a quaternion to count as a rotation.
inline constexpr double kUnitTolerance = 1e-6;

/// Unit quaternion with w >= 0 representing the same rotation as `q`.
/// Throws Error(InvalidOrientation) for zero-norm or non-finite input.
Quat canonicalize_quaternion(const Quat& q);

/// (1-u)*p0 + u*p1, componentwise.
Vec3 lerp_position(const Vec3& p0, const Vec3& p1, double u);

/// Shortest-arc spherical interpolation. Falls back to normalized lerp when
/// the two rotations are closer than 1e-5 rad. Inputs must be unit-norm.
Quat slerp_orientation(const Quat& q0, const Quat& q1, double u);

Quat multiply(const Quat& a, const Quat& b);
Quat from_axis_angle(const Vec3& axis, double angle_rad);
/// Rotation about +y (yaw) followed by rotation about the rotated +x (pitch).
Quat from_yaw_pitch(double yaw_rad, double pitch_rad);
Vec3 rotate(const Quat& q, const Vec3& v);
/// Row-major 3x3 rotation matrix of a unit quaternion.
std::array<double, 9> rotation_matrix(const Quat& q);

/// +z rotated by `q`; the view axis of cameras.
inline Vec3 forward(const Quat& q) { return rotate(q, {0.0, 0.0, 1.0}); }
inline Vec3 up(const Quat& q) { return rotate(q, {0.0, 1.0, 0.0}); }
inline Vec3 right(const Quat& q) { return rotate(q, {1.0, 0.0, 0.0}); }

struct Pose {
  Vec3 position;
  Quat orientation;

  friend bool operator==(const Pose&, const Pose&) = default;
};

}  // namespace sessionscope
