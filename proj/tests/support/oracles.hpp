#pragma once

// Reference implementations for tests, written without the library's math helpers.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sessionscope/heatmap.hpp"
#include "sessionscope/model.hpp"
#include "sessionscope/replay.hpp"

namespace oracle {

using sessionscope::CameraParams;
using sessionscope::GridSpec;
using sessionscope::PoseSample;
using sessionscope::Quat;
using sessionscope::Vec3;

// Rotation matrix columns of a unit quaternion, written out from the
// textbook formula.
struct Basis {
  Vec3 right;    // image of +x
  Vec3 up;       // image of +y
  Vec3 forward;  // image of +z
};

inline Basis basis_of(const Quat& q) {
  const double x = q.x, y = q.y, z = q.z, w = q.w;
  Basis b;
  b.right = {1 - 2 * (y * y + z * z), 2 * (x * y + w * z), 2 * (x * z - w * y)};
  b.up = {2 * (x * y - w * z), 1 - 2 * (x * x + z * z), 2 * (y * z + w * x)};
  b.forward = {2 * (x * z + w * y), 2 * (y * z - w * x), 1 - 2 * (x * x + y * y)};
  return b;
}

inline double dot3(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

enum class Verdict { Inside, Outside, Ambiguous };

// Camera-space containment: near <= z <= far, |y| <= z tan(v/2),
// |x| <= z aspect tan(v/2). Points within `eps` of any boundary are
// reported as Ambiguous.
inline Verdict camera_space_contains(const Vec3& cam_pos, const Quat& cam_q,
                                     const CameraParams& params, const Vec3& p,
                                     double eps = 1e-9) {
  const Basis b = basis_of(cam_q);
  const Vec3 d{p.x - cam_pos.x, p.y - cam_pos.y, p.z - cam_pos.z};
  const double xc = dot3(d, b.right);
  const double yc = dot3(d, b.up);
  const double zc = dot3(d, b.forward);
  const double tv = std::tan(params.vfov / 2);
  const double th = params.aspect * tv;
  const double dist[] = {
      zc - params.near,
      params.far - zc,
      (zc * th - std::abs(xc)) / std::sqrt(1 + th * th),
      (zc * tv - std::abs(yc)) / std::sqrt(1 + tv * tv),
  };
  for (double v : dist) {
    if (v < -eps) return Verdict::Outside;
  }
  for (double v : dist) {
    if (v <= eps) return Verdict::Ambiguous;
  }
  return Verdict::Inside;
}

// Pose position at t by scanning the whole stream for the bracketing pair.
inline Vec3 naive_position(const std::vector<PoseSample>& stream, double t) {
  if (t <= stream.front().t) return stream.front().pose.position;
  if (t >= stream.back().t) return stream.back().pose.position;
  for (std::size_t i = 0; i + 1 < stream.size(); ++i) {
    const PoseSample& a = stream[i];
    const PoseSample& b = stream[i + 1];
    if (a.t <= t && t <= b.t) {
      const double u = (t - a.t) / (b.t - a.t);
      const Vec3& p = a.pose.position;
      const Vec3& q = b.pose.position;
      return {p.x + u * (q.x - p.x), p.y + u * (q.y - p.y), p.z + u * (q.z - p.z)};
    }
  }
  return stream.back().pose.position;
}

// Per-sample floor-division binning, then a scan over every cell to find the
// matching index pair.
inline std::vector<std::uint64_t> brute_force_bins(const std::vector<Vec3>& positions,
                                                   const GridSpec& spec) {
  std::vector<std::uint64_t> counts(spec.cols * spec.rows, 0);
  auto index = [](double v, double origin, double cell, std::size_t n) -> long long {
    const double u = (v - origin) / cell;
    if (u < 0 || u > static_cast<double>(n)) return -1;
    long long k = static_cast<long long>(std::floor(u));
    if (k == static_cast<long long>(n)) k -= 1;  // far border is closed
    return k;
  };
  for (const Vec3& p : positions) {
    const long long c = index(p.x, spec.origin_x, spec.cell_size, spec.cols);
    const long long r = index(p.z, spec.origin_z, spec.cell_size, spec.rows);
    for (std::size_t row = 0; row < spec.rows; ++row) {
      for (std::size_t col = 0; col < spec.cols; ++col) {
        if (static_cast<long long>(col) == c && static_cast<long long>(row) == r) {
          ++counts[row * spec.cols + col];
        }
      }
    }
  }
  return counts;
}

// Rotation angle between two unit quaternions.
inline double angle_between(const Quat& a, const Quat& b) {
  const double d = std::abs(a.x * b.x + a.y * b.y + a.z * b.z + a.w * b.w);
  return 2 * std::acos(std::min(1.0, d));
}

// Same rotation: q1 = +-q2 within tol.
inline bool same_rotation(const Quat& a, const Quat& b, double tol = 0.0) {
  auto close = [tol](double u, double v) { return std::abs(u - v) <= tol; };
  const bool plus = close(a.x, b.x) && close(a.y, b.y) && close(a.z, b.z) && close(a.w, b.w);
  const bool minus = close(a.x, -b.x) && close(a.y, -b.y) && close(a.z, -b.z) && close(a.w, -b.w);
  return plus || minus;
}

// Reference transport model, independent of sessionscope::Transport.
struct TransportModel {
  enum Mode { Stopped, Playing, Paused };
  Mode mode = Stopped;
  bool backward = false;
  double rate = 1.0;
  double t = 0.0;
  double duration = 0.0;
  bool played = false;

  // Counters in output order: played, reverse, forward, paused.
  std::uint64_t played_n = 0, reverse_n = 0, forward_n = 0, paused_n = 0;

  void command(const std::string& name, double seek_t = 0.0) {
    if (name == "play") {
      mode = Playing; backward = false; rate = 1; played = true; ++played_n;
    } else if (name == "fast_forward") {
      mode = Playing; backward = false; rate = 2; played = true; ++forward_n;
    } else if (name == "rewind") {
      mode = Playing; backward = true; rate = 1; played = true; ++reverse_n;
    } else if (name == "pause") {
      mode = Paused; ++paused_n;
    } else if (name == "resume") {
      if (played) {
        mode = Playing;
      } else {
        mode = Playing; backward = false; rate = 1; played = true; ++played_n;
      }
    } else if (name == "stop") {
      mode = Stopped; t = 0;
    } else if (name == "seek") {
      t = seek_t < 0 ? 0 : (seek_t > duration ? duration : seek_t);
    }
  }

  void advance(double dt) {
    if (mode != Playing) return;
    double next = t + (backward ? -1 : 1) * rate * dt;
    if (next <= 0) {
      next = 0;
      if (backward) mode = Paused;
    }
    if (next >= duration) {
      next = duration;
      if (!backward) mode = Paused;
    }
    t = next;
  }
};

}  // namespace oracle
