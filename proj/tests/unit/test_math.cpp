#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sessionscope/error.hpp"
#include "sessionscope/math.hpp"

using namespace sessionscope;

TEST_SUITE("math") {
  TEST_CASE("canonicalize scales to unit length") {
    CHECK(canonicalize_quaternion({0, 0, 0, 2}) == Quat{0, 0, 0, 1});
  }

  TEST_CASE("canonicalize picks the w >= 0 representative") {
    CHECK(canonicalize_quaternion({0, 0, 0, -1}) == Quat{0, 0, 0, 1});
    const Quat q = canonicalize_quaternion({0.5, -0.5, 0.5, -0.5});
    CHECK(q == Quat{-0.5, 0.5, -0.5, 0.5});
  }

  TEST_CASE("canonicalize rejects zero and non-finite input") {
    CHECK_THROWS_AS(canonicalize_quaternion({0, 0, 0, 0}), Error);
    try {
      canonicalize_quaternion({0, 0, 0, 0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidOrientation);
    }
    CHECK_THROWS_AS(canonicalize_quaternion({NAN, 0, 0, 1}), Error);
    CHECK_THROWS_AS(canonicalize_quaternion({INFINITY, 0, 0, 1}), Error);
  }

  TEST_CASE("canonicalize preserves the rotation matrix") {
    SplitMix64 rng(11);
    for (int i = 0; i < 2000; ++i) {
      const Quat raw{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
      if (norm(raw) < 1e-3) continue;
      const Quat c = canonicalize_quaternion(raw);
      CHECK(std::abs(norm(c) - 1.0) <= 1e-9);
      CHECK(c.w >= 0.0);
      const double n2 = dot(raw, raw);
      const Quat u{raw.x / std::sqrt(n2), raw.y / std::sqrt(n2), raw.z / std::sqrt(n2),
                   raw.w / std::sqrt(n2)};
      const auto a = oracle::basis_of(u);
      const auto b = oracle::basis_of(c);
      for (const auto& [va, vb] : {std::pair{a.right, b.right}, {a.up, b.up}, {a.forward, b.forward}}) {
        CHECK(std::abs(va.x - vb.x) <= 1e-9);
        CHECK(std::abs(va.y - vb.y) <= 1e-9);
        CHECK(std::abs(va.z - vb.z) <= 1e-9);
      }
    }
  }

  TEST_CASE("canonicalize is idempotent bit for bit") {
    SplitMix64 rng(12);
    for (int i = 0; i < 10000; ++i) {
      const Quat raw{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
      if (norm(raw) < 1e-3) continue;
      const Quat once = canonicalize_quaternion(raw);
      REQUIRE(canonicalize_quaternion(once) == once);
    }
  }

  TEST_CASE("lerp endpoints and midpoint") {
    const Vec3 p0{0, 0, 0}, p1{2, 0, 0};
    CHECK(lerp_position(p0, p1, 0.5) == Vec3{1, 0, 0});
    CHECK(lerp_position(p0, p1, 0.0) == p0);
    CHECK(lerp_position(p0, p1, 1.0) == p1);
  }

  TEST_CASE("lerp lies on the segment at fraction u") {
    SplitMix64 rng(13);
    for (int i = 0; i < 1000; ++i) {
      const Vec3 p0 = fixtures::random_vec(rng, -10, 10);
      const Vec3 p1 = fixtures::random_vec(rng, -10, 10);
      const double u = rng.unit();
      const Vec3 r = lerp_position(p0, p1, u);
      CHECK(std::abs(norm(r - p0) - u * norm(p1 - p0)) <= 1e-9);
      CHECK(std::abs(norm(r - p0) + norm(p1 - r) - norm(p1 - p0)) <= 1e-9);
    }
  }

  TEST_CASE("slerp of a rotation with itself is that rotation") {
    SplitMix64 rng(14);
    for (int i = 0; i < 100; ++i) {
      const Quat q = fixtures::random_unit_quat(rng);
      for (double u : {0.0, 0.25, 0.5, 1.0}) CHECK(slerp_orientation(q, q, u) == q);
    }
  }

  TEST_CASE("slerp halfway to a half turn about y is a quarter turn") {
    const Quat half = from_axis_angle({0, 1, 0}, std::numbers::pi);
    const Quat mid = slerp_orientation(Quat::identity(), half, 0.5);
    const Quat quarter = from_axis_angle({0, 1, 0}, std::numbers::pi / 2);
    CHECK(oracle::same_rotation(mid, quarter, 1e-12));
  }

  TEST_CASE("slerp angle grows linearly with u") {
    SplitMix64 rng(15);
    for (int i = 0; i < 2000; ++i) {
      const Quat q0 = fixtures::random_unit_quat(rng);
      const Quat q1 = fixtures::random_unit_quat(rng);
      const double u = rng.unit();
      const Quat r = slerp_orientation(q0, q1, u);
      const double total = oracle::angle_between(q0, q1);
      CHECK(std::abs(oracle::angle_between(q0, r) - u * total) <= 1e-6);
    }
  }

  TEST_CASE("slerp output stays unit length") {
    SplitMix64 rng(16);
    for (int i = 0; i < 10000; ++i) {
      const Quat r = slerp_orientation(fixtures::random_unit_quat(rng),
                                       fixtures::random_unit_quat(rng), rng.unit());
      REQUIRE(std::abs(norm(r) - 1.0) <= 1e-9);
    }
  }

  TEST_CASE("slerp of nearly equal rotations falls back smoothly") {
    const Quat q0 = from_axis_angle({0, 1, 0}, 0.3);
    const Quat q1 = from_axis_angle({0, 1, 0}, 0.3 + 2e-6);
    const Quat r = slerp_orientation(q0, q1, 0.5);
    CHECK(std::abs(norm(r) - 1.0) <= 1e-12);
    CHECK(std::abs(oracle::angle_between(q0, r) - 1e-6) <= 1e-9);
  }

  TEST_CASE("slerp rejects non-unit input") {
    CHECK_THROWS_AS(slerp_orientation({0, 0, 0, 2}, Quat::identity(), 0.5), Error);
    CHECK_THROWS_AS(slerp_orientation(Quat::identity(), {0.1, 0, 0, 0.5}, 0.5), Error);
  }

  TEST_CASE("forward of yaw and pitch follows the y-up convention") {
    const Vec3 f = forward(from_yaw_pitch(std::numbers::pi / 2, 0));
    CHECK(f.x == doctest::Approx(1.0));
    CHECK(f.z == doctest::Approx(0.0));
    const Vec3 up_look = forward(from_yaw_pitch(0, 0.5));
    CHECK(up_look.y > 0);
  }

  TEST_CASE("rotate agrees with the textbook basis") {
    SplitMix64 rng(17);
    for (int i = 0; i < 500; ++i) {
      const Quat q = fixtures::random_unit_quat(rng);
      const auto b = oracle::basis_of(q);
      const Vec3 f = forward(q);
      CHECK(norm(f - b.forward) <= 1e-12);
      CHECK(norm(up(q) - b.up) <= 1e-12);
      CHECK(norm(right(q) - b.right) <= 1e-12);
    }
  }
}
