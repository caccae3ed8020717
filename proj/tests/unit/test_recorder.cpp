#include <doctest.h>

#include <functional>
#include <set>

#include "sessionscope/error.hpp"
#include "sessionscope/log_store.hpp"
#include "sessionscope/recorder.hpp"

using namespace sessionscope;

namespace {

RecordingConfig config(double hz) {
  RecordingConfig c;
  c.sample_hz = hz;
  c.session_id = "rec";
  c.game_name = "unit";
  c.started_at = WallTime{1714557600000};
  return c;
}

ObjectDescriptor player(const std::string& id) { return {id, id, Category::Player, true, {}, {}}; }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::State;
}

}  // namespace

TEST_SUITE("recorder") {
  TEST_CASE("start then finish gives an empty valid session") {
    Recorder r = start_recording(config(30));
    const SessionLog log = r.finish();
    CHECK(log.duration == 0.0);
    CHECK(log.total_pose_samples() == 0);
    CHECK(validate_session(log).empty());
  }

  TEST_CASE("sample period follows the rate") {
    CHECK(start_recording(config(10)).sample_period() == 0.1);
  }

  TEST_CASE("independent handles") {
    Recorder a = start_recording(config(10));
    Recorder b = start_recording(config(10));
    a.track_object(player("p"), {});
    a.tick(0.5);
    CHECK(b.finish().total_pose_samples() == 0);
    CHECK(a.finish().total_pose_samples() == 6);
  }

  TEST_CASE("one second at 10 Hz gives 11 samples") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    r.tick(1.0);
    const SessionLog log = r.finish();
    CHECK(log.samples.at("p1").size() == 11);
    CHECK(log.duration == 1.0);
  }

  TEST_CASE("late registration starts at the next instant") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    r.tick(0.45);
    r.track_object({"orb", "Orb", Category::Custom, true, {}, {}}, {});
    r.tick(0.55);
    const SessionLog log = r.finish();
    const auto& orb = log.samples.at("orb");
    CHECK(orb.front().t == 0.5);
    CHECK(orb.size() == 6);
    CHECK(log.samples.at("p1").size() == 11);
  }

  TEST_CASE("registration errors") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    CHECK(kind_of([&] { r.track_object(player("p1"), {}); }) == ErrorKind::Registration);
    CHECK(kind_of([&] {
            r.track_object({"cam", "Cam", Category::Camera, true, {}, {}}, {});
          }) == ErrorKind::MissingParams);
    r.track_object({"cam", "Cam", Category::Camera, true, {}, {}}, {}, CameraParams{1, 1.5, 0.1, 9});
    CHECK(r.finish().camera_params.at("cam").far == 9);
  }

  TEST_CASE("many updates between ticks log one sample") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    r.tick(0.0);
    for (int i = 0; i < 1000; ++i) r.update_pose("p1", {{double(i), 0, 0}, {}});
    CHECK(r.tick(0.1) == 1);
    const SessionLog log = r.finish();
    REQUIRE(log.samples.at("p1").size() == 2);
    CHECK(log.samples.at("p1")[1].pose.position.x == 999);
  }

  TEST_CASE("poses are held between updates") {
    Recorder r(config(10));
    r.track_object(player("p1"), {{1, 2, 3}, {}});
    r.tick(0.3);
    const SessionLog log = r.finish();
    for (const auto& s : log.samples.at("p1")) CHECK(s.pose.position == Vec3{1, 2, 3});
  }

  TEST_CASE("update errors") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    r.track_object({"wall", "Wall", Category::Custom, false, {}, {}}, {});
    r.track_object({"hand", "Hand", Category::Hand, true, HandSide::Right, 21u}, {});
    CHECK(kind_of([&] { r.update_pose("ghost", {}); }) == ErrorKind::Reference);
    CHECK(kind_of([&] { r.update_pose("wall", {}); }) == ErrorKind::Reference);
    std::vector<Vec3> joints(20);
    CHECK(kind_of([&] { r.update_hand("hand", {}, joints); }) == ErrorKind::JointCount);
    joints.resize(21);
    r.update_hand("hand", {{1, 1, 1}, {}}, joints);
    r.tick(0.0);
    const SessionLog log = r.finish();
    CHECK(log.hands.at("hand").front().joints.size() == 21);
    CHECK(log.hands.at("hand").front().side == HandSide::Right);
    CHECK(log.hands.at("hand").front().wrist.position == Vec3{1, 1, 1});
  }

  TEST_CASE("hands default to 26 joints on the left") {
    Recorder r(config(10));
    r.track_object({"hand", "Hand", Category::Hand, true, {}, {}}, {});
    r.tick(0.0);
    const SessionLog log = r.finish();
    CHECK(log.objects.front().joint_count == 26u);
    CHECK(log.hands.at("hand").front().joints.size() == 26);
  }

  TEST_CASE("events are stamped with the clock, not resampled") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    r.tick(0.37);
    r.emit_input({99.0, "button_a", InputKind::Button, "jump", {1, 0, 1}, 1.0});
    for (int i = 0; i < 50; ++i) r.emit_input({0, "pinch", InputKind::Gesture, "select", {}, 1.0});
    r.track_object({"enemy", "Enemy", Category::AudioSource, true, {}, {}}, {});
    r.emit_audio({0, "zombie_growl", 2.0, "enemy", {3, 0, 3}});
    CHECK(kind_of([&] { r.emit_audio({0, "x", 1.0, "ghost", {}}); }) == ErrorKind::Reference);
    r.tick(0.1);
    const SessionLog log = r.finish();
    REQUIRE(log.inputs.size() == 51);
    CHECK(log.inputs.front().t == 0.37);
    CHECK(log.inputs.front().action == "jump");
    REQUIRE(log.audio.size() == 1);
    CHECK(log.audio.front().clip_name == "zombie_growl");
    CHECK(log.audio.front().length == 2.0);
    CHECK(log.audio.front().source_object_id == "enemy");
    CHECK(log.audio.front().t == 0.37);
  }

  TEST_CASE("crossed instants in one tick") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    CHECK(r.tick(1.05) == 11);
    CHECK(r.tick(0.0) == 0);
  }

  TEST_CASE("zero tick consumes only the initial instant") {
    Recorder r(config(10));
    r.track_object(player("p1"), {});
    CHECK(r.tick(0.0) == 1);
    CHECK(r.tick(0.0) == 0);
  }

  TEST_CASE("objects are sampled at identical instants") {
    Recorder r(config(30));
    r.track_object(player("a"), {});
    r.track_object(player("b"), {});
    for (int i = 0; i < 100; ++i) r.tick(0.013);
    const SessionLog log = r.finish();
    const auto& a = log.samples.at("a");
    const auto& b = log.samples.at("b");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].t == b[i].t);
  }

  TEST_CASE("sixty seconds at 30 Hz in frame-sized ticks") {
    Recorder r(config(30));
    r.track_object(player("p1"), {});
    for (int i = 0; i < 1800; ++i) r.tick(1.0 / 30.0);
    const SessionLog log = r.finish();
    CHECK(log.samples.at("p1").size() == 1801);
    CHECK(validate_session(log).empty());
  }

  TEST_CASE("sampler instants are exact multiples over a million ticks") {
    Recorder r(config(30));
    r.track_object(player("p1"), {});
    for (int i = 0; i < 1000000; ++i) r.tick(1.0 / 30.0);
    const SessionLog log = r.finish();
    const auto& s = log.samples.at("p1");
    REQUIRE(s.size() == 1000001);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
      worst = std::max(worst, std::abs(s[k].t - static_cast<double>(k) / 30.0));
    }
    CHECK(worst == 0.0);
  }

  TEST_CASE("statics are captured once") {
    Recorder r(config(10));
    r.track_object({"wall", "Wall", Category::Custom, false, {}, {}}, {{0, 0, 5}, {}}, {},
                   Vec3{2, 1, 0.1});
    r.tick(0.5);
    r.track_object({"crate", "Crate", Category::Custom, false, {}, {}}, {});
    r.tick(0.5);
    const SessionLog log = r.finish();
    REQUIRE(log.statics.size() == 2);
    CHECK(log.statics[0].id == "wall");
    CHECK(log.statics[0].extent == Vec3{2, 1, 0.1});
    CHECK(log.samples.empty());
  }

  TEST_CASE("finish twice is a state error and the log round trips") {
    Recorder r(config(30));
    r.track_object(player("p1"), {});
    r.tick(2.0);
    const SessionLog log = r.finish();
    CHECK(kind_of([&] { r.finish(); }) == ErrorKind::State);
    CHECK(kind_of([&] { r.tick(1.0); }) == ErrorKind::State);
    const std::string text = write_session_string(log);
    CHECK(write_session_string(parse_session_string(text)) == text);
  }
}
