#include <doctest.h>

#include <functional>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sessionscope/error.hpp"
#include "sessionscope/replay.hpp"
#include "sessionscope/synth.hpp"

using namespace sessionscope;

namespace {

SessionLog synth(Scenario sc, std::uint64_t seed, double duration = 10, int players = 1) {
  ScenarioSpec spec;
  spec.scenario = sc;
  spec.seed = seed;
  spec.duration = duration;
  spec.player_count = players;
  return synthesize_session(spec);
}

SessionLog two_sample_log() {
  SessionLog log;
  log.session_id = "two";
  log.objects.push_back({"p", "P", Category::Player, true, {}, {}});
  log.samples["p"] = {{1.0, "p", {{0, 0, 0}, {}}}, {2.0, "p", {{2, 0, 0}, {}}}};
  log.duration = 3.0;
  return log;
}

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

TEST_SUITE("replay") {
  TEST_CASE("load assigns palette colors by order") {
    const LoadedSet set = load_sessions({synth(Scenario::Arena, 1), synth(Scenario::Patrol, 2, 20),
                                         synth(Scenario::FpsDrill, 3, 5)});
    REQUIRE(set.colors.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(set.colors[i] == kSessionPalette[i]);
    CHECK(set.colors[0] != set.colors[1]);
    CHECK(set.colors[1] != set.colors[2]);
    CHECK(set.duration_max == 20.0);
  }

  TEST_CASE("palette entries are pairwise distinct") {
    for (std::size_t i = 0; i < kSessionPalette.size(); ++i) {
      for (std::size_t j = i + 1; j < kSessionPalette.size(); ++j) {
        CHECK(kSessionPalette[i] != kSessionPalette[j]);
      }
    }
  }

  TEST_CASE("load limits") {
    const SessionLog a = synth(Scenario::Arena, 1, 2);
    CHECK(load_sessions({a}).duration_max == 2.0);
    CHECK(kind_of([&] { load_sessions({a, a, a, a}); }) == ErrorKind::Capacity);
    CHECK(load_sessions({a, a, a, a}, 4).sessions.size() == 4);
    CHECK(kind_of([&] { load_sessions({}); }) == ErrorKind::Argument);
  }

  TEST_CASE("transport basics") {
    Transport tr(10.0);
    CHECK(tr.state().mode == TransportMode::Stopped);
    tr.apply({TransportCommandKind::Play});
    CHECK(tr.advance(1.0).t == 1.0);
    tr.apply(TransportCommand::seek(5.0));
    tr.apply({TransportCommandKind::Rewind});
    CHECK(tr.advance(2.0).t == 3.0);
    CHECK(tr.state().direction == Direction::Backward);
    tr.apply({TransportCommandKind::Pause});
    CHECK(tr.advance(100.0).t == 3.0);
    tr.apply({TransportCommandKind::Resume});
    CHECK(tr.state().direction == Direction::Backward);
    CHECK(tr.state().mode == TransportMode::Playing);
    tr.apply({TransportCommandKind::FastForward});
    CHECK(tr.advance(0.5).t == 4.0);
    CHECK(tr.state().rate == 2.0);
    tr.apply({TransportCommandKind::Stop});
    CHECK(tr.state() == TransportState{TransportMode::Stopped, Direction::Forward, 2.0, 0.0});
  }

  TEST_CASE("transport boundaries auto-pause") {
    Transport tr(10.0);
    tr.apply(TransportCommand::seek(9.9));
    tr.apply({TransportCommandKind::FastForward});
    const TransportState end = tr.advance(1.0);
    CHECK(end.t == 10.0);
    CHECK(end.mode == TransportMode::Paused);

    tr.apply(TransportCommand::seek(0.0));
    tr.apply({TransportCommandKind::Rewind});
    const TransportState start = tr.advance(0.5);
    CHECK(start.t == 0.0);
    CHECK(start.mode == TransportMode::Paused);
  }

  TEST_CASE("seek clamps and keeps the mode") {
    Transport tr(10.0);
    tr.apply({TransportCommandKind::Play});
    CHECK(tr.apply(TransportCommand::seek(-4)).t == 0.0);
    CHECK(tr.apply(TransportCommand::seek(40)).t == 10.0);
    CHECK(tr.state().mode == TransportMode::Playing);
    const TransportState before = tr.state();
    CHECK(kind_of([&] { tr.apply(TransportCommand::seek(NAN)); }) == ErrorKind::Argument);
    CHECK(kind_of([&] { tr.apply(TransportCommand::seek(INFINITY)); }) == ErrorKind::Argument);
    CHECK(tr.state() == before);
  }

  TEST_CASE("resume without a prior play plays forward") {
    MetricsRecorder m;
    Transport tr(10.0, &m);
    tr.apply({TransportCommandKind::Resume});
    CHECK(tr.state().mode == TransportMode::Playing);
    CHECK(tr.state().direction == Direction::Forward);
    CHECK(tr.state().rate == 1.0);
    CHECK(m.snapshot().played == 1);
  }

  TEST_CASE("command names") {
    for (const char* name : {"play", "pause", "resume", "rewind", "fast_forward", "stop", "seek"}) {
      CHECK(to_string(parse_transport_command(name)) == name);
    }
    CHECK(kind_of([] { parse_transport_command("eject"); }) == ErrorKind::Argument);
  }

  TEST_CASE("transport matches the reference model on random scripts") {
    const char* names[] = {"play", "pause", "resume", "rewind", "fast_forward", "stop", "seek"};
    SplitMix64 rng(77);
    for (int run = 0; run < 20; ++run) {
      const double duration = 1 + rng.uniform(0, 30);
      Transport tr(duration);
      oracle::TransportModel model;
      model.duration = duration;
      for (int step = 0; step < 300; ++step) {
        const std::string name = names[rng.below(7)];
        const double target = rng.uniform(-5, duration + 5);
        TransportCommand cmd{parse_transport_command(name), target};
        tr.apply(cmd);
        model.command(name, target);
        const double dt = rng.below(4) == 0 ? 0.0 : rng.uniform(0, 3);
        const TransportState s = tr.advance(dt);
        model.advance(dt);
        REQUIRE(s.t == model.t);
        REQUIRE(static_cast<int>(s.mode) == static_cast<int>(model.mode));
        REQUIRE((s.direction == Direction::Backward) == model.backward);
        REQUIRE(s.rate == model.rate);
        REQUIRE(s.t >= 0.0);
        REQUIRE(s.t <= duration);
      }
    }
  }

  TEST_CASE("resolve at the midpoint and outside the stream") {
    const SessionLog log = two_sample_log();
    const auto& stream = log.samples.at("p");
    CHECK(resolve_pose(stream, 1.5).position == Vec3{1, 0, 0});
    CHECK(resolve_pose(stream, 0.2).position == Vec3{0, 0, 0});
    CHECK(resolve_pose(stream, 2.7).position == Vec3{2, 0, 0});
  }

  TEST_CASE("resolve at recorded instants is exact") {
    const SessionLog log = synth(Scenario::FpsDrill, 5, 6);
    const LoadedSet set = load_sessions({log});
    for (const auto& [id, stream] : log.samples) {
      for (const auto& s : stream) {
        const Pose p = resolve_pose(stream, s.t);
        REQUIRE(p.position == s.pose.position);
        REQUIRE(oracle::same_rotation(p.orientation, s.pose.orientation));
      }
    }
    for (const auto& [id, stream] : log.hands) {
      for (const auto& h : stream) REQUIRE(resolve_hand(stream, h.t) == h);
    }
  }

  TEST_CASE("hand joints interpolate componentwise") {
    std::vector<HandFrame> stream{
        {0.0, "h", HandSide::Left, {}, {{0, 0, 0}, {1, 1, 1}}},
        {1.0, "h", HandSide::Left, {}, {{2, 0, 0}, {1, 3, 1}}},
    };
    const HandFrame mid = resolve_hand(stream, 0.5);
    CHECK(mid.joints[0] == Vec3{1, 0, 0});
    CHECK(mid.joints[1] == Vec3{1, 2, 1});
  }

  TEST_CASE("resolved positions match the naive scan") {
    const SessionLog log = synth(Scenario::Patrol, 8, 20, 2);
    SplitMix64 rng(5);
    for (int i = 0; i < 500; ++i) {
      const double t = rng.uniform(-1, 21);
      for (const auto& [id, stream] : log.samples) {
        const Vec3 got = resolve_pose(stream, t).position;
        const Vec3 want = oracle::naive_position(stream, t);
        REQUIRE(norm(got - want) <= 1e-12);
      }
    }
  }

  TEST_CASE("frames are total over finite times") {
    const LoadedSet set = load_sessions({synth(Scenario::Arena, 2, 5)});
    for (double t : {-1e300, -1.0, 0.0, 2.5, 5.0, 7.0, 1e300}) {
      const ReplayFrame f = resolve_frame(set, t, FilterSet::all());
      CHECK(f.t >= 0.0);
      CHECK(f.t <= 5.0);
      for (const auto& o : f.objects) {
        CHECK(is_finite(o.pose.position));
        CHECK(is_finite(o.pose.orientation));
      }
    }
    CHECK(kind_of([&] { resolve_frame(set, NAN, FilterSet::all()); }) == ErrorKind::Argument);
  }

  TEST_CASE("frame content and colors") {
    const LoadedSet set = load_sessions({synth(Scenario::Arena, 1, 10), synth(Scenario::FpsDrill, 2, 10)});
    const ReplayFrame f = resolve_frame(set, 4.0, FilterSet::all());
    std::set<std::string> ids;
    for (const auto& o : f.objects) {
      ids.insert(std::to_string(o.session) + ":" + o.object_id);
      CHECK(o.color == set.colors[o.session]);
      if (o.category == Category::Camera) CHECK(o.camera.has_value());
      if (o.category == Category::Hand) CHECK(o.joints.size() == 26);
    }
    CHECK(ids.contains("0:player_0"));
    CHECK(ids.contains("1:hand_r_0"));
    for (const auto& trail : f.trails) {
      for (const auto& p : trail.points) CHECK(p.t <= 4.0);
    }
    for (const auto& m : f.inputs) CHECK(std::abs(m.event.t - 4.0) <= 0.25);
    for (const auto& m : f.audio) CHECK(std::abs(m.event.t - 4.0) <= 0.25);
    CHECK_FALSE(f.statics.empty());
  }

  TEST_CASE("event window selects nearby events") {
    SessionLog log = two_sample_log();
    log.inputs = {{0.9, "a", InputKind::Button, "x", {}, 1}, {1.2, "b", InputKind::Button, "y", {}, 1},
                  {1.26, "c", InputKind::Button, "z", {}, 1}};
    const LoadedSet set = load_sessions({log});
    const ReplayFrame f = resolve_frame(set, 1.0, FilterSet::all());
    REQUIRE(f.inputs.size() == 2);
    CHECK(f.inputs[0].event.control == "a");
    CHECK(f.inputs[1].event.control == "b");
  }

  TEST_CASE("filters") {
    const LoadedSet set = load_sessions({synth(Scenario::Arena, 1, 10), synth(Scenario::Patrol, 2, 10),
                                         synth(Scenario::FpsDrill, 3, 10)});
    const ReplayFrame base = resolve_frame(set, 5.0, FilterSet::all());

    FilterSet no_inputs = FilterSet::all();
    no_inputs.enabled.erase(FilterCategory::Inputs);
    CHECK(resolve_frame(set, 5.0, no_inputs).inputs.empty());

    FilterSet no_session = FilterSet::all();
    no_session.session_enabled[1] = false;
    const ReplayFrame f = resolve_frame(set, 5.0, no_session);
    for (const auto& o : f.objects) CHECK(o.session != 1);
    for (const auto& s : f.statics) CHECK(s.session != 1);
    bool saw0 = false, saw2 = false;
    for (const auto& o : f.objects) {
      saw0 = saw0 || o.session == 0;
      saw2 = saw2 || o.session == 2;
    }
    CHECK(saw0);
    CHECK(saw2);

    FilterSet override_off = FilterSet::all();
    override_off.object_overrides["player_0"] = false;
    for (const auto& o : resolve_frame(set, 5.0, override_off).objects) CHECK(o.object_id != "player_0");

    FilterSet only_guard;
    only_guard.object_overrides["guard"] = true;
    const ReplayFrame g = resolve_frame(set, 5.0, only_guard);
    REQUIRE(g.objects.size() == 1);
    CHECK(g.objects[0].object_id == "guard");
    CHECK(g.trails.empty());
  }

  TEST_CASE("filter toggles are non-destructive") {
    const LoadedSet set = load_sessions({synth(Scenario::Arena, 1, 10), synth(Scenario::FpsDrill, 3, 10)});
    ReplaySession replay(set);
    const ReplayFrame untouched = replay.resolve(3.3);
    SplitMix64 rng(3);
    const auto& cats = all_filter_categories();
    for (int i = 0; i < 50; ++i) {
      FilterSet f = replay.filters();
      const FilterCategory c = cats[rng.below(cats.size())];
      if (f.enabled.contains(c)) {
        f.enabled.erase(c);
      } else {
        f.enabled.insert(c);
      }
      if (rng.below(3) == 0) f.session_enabled[rng.below(2)] = rng.below(2) == 0;
      if (rng.below(3) == 0) f.object_overrides["camera_0"] = rng.below(2) == 0;
      replay.set_filters(f);
      replay.resolve(3.3);
    }
    replay.set_filters(FilterSet::all());
    CHECK(replay.resolve(3.3) == untouched);
    CHECK(replay.loaded().sessions == set.sessions);
  }

  TEST_CASE("invalid filters are rejected") {
    ReplaySession replay(load_sessions({synth(Scenario::Arena, 1, 3)}));
    FilterSet bad = FilterSet::all();
    bad.object_overrides["nobody"] = false;
    CHECK(kind_of([&] { replay.set_filters(bad); }) == ErrorKind::Reference);
    FilterSet bad_session = FilterSet::all();
    bad_session.session_enabled[5] = false;
    CHECK(kind_of([&] { replay.set_filters(bad_session); }) == ErrorKind::Argument);
    CHECK(replay.filters() == FilterSet::all());
    CHECK(kind_of([] { parse_filter_category("Enemies"); }) == ErrorKind::Argument);
  }

  TEST_CASE("trail endpoints") {
    const LoadedSet set = load_sessions({two_sample_log()});
    const auto at0 = trail_prefix(set, 0, "p", 0.0);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0].position == Vec3{0, 0, 0});
    const auto mid = trail_prefix(set, 0, "p", 1.5);
    REQUIRE(mid.size() == 2);
    CHECK(mid[1].t == 1.5);
    CHECK(mid[1].position == Vec3{1, 0, 0});
    const auto end = trail_prefix(set, 0, "p", 3.0);
    REQUIRE(end.size() == 3);
    CHECK(end[1].position == Vec3{2, 0, 0});
    CHECK(end[2].t == 3.0);
    CHECK(end[2].position == Vec3{2, 0, 0});
    CHECK(kind_of([&] { trail_prefix(set, 0, "ghost", 1.0); }) == ErrorKind::Reference);
    CHECK(kind_of([&] { trail_prefix(set, 3, "p", 1.0); }) == ErrorKind::Reference);
  }

  TEST_CASE("trails grow as prefixes of each other") {
    const LoadedSet set = load_sessions({synth(Scenario::Arena, 4, 15)});
    SplitMix64 rng(8);
    for (int i = 0; i < 200; ++i) {
      double t1 = rng.uniform(0, 15), t2 = rng.uniform(0, 15);
      if (t1 > t2) std::swap(t1, t2);
      auto a = trail_prefix(set, 0, "player_0", t1);
      auto b = trail_prefix(set, 0, "player_0", t2);
      for (const auto& p : a) REQUIRE(p.t <= t1);
      for (const auto& p : b) REQUIRE(p.t <= t2);
      a.pop_back();
      b.pop_back();
      REQUIRE(a.size() <= b.size());
      for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(a[k] == b[k]);
    }
  }

  TEST_CASE("recorded trail points never decrease in t") {
    const LoadedSet set = load_sessions({synth(Scenario::Patrol, 9, 12)});
    std::size_t previous = 0;
    for (double t = 0; t <= 12.0; t += 0.05) {
      const auto& stream = set.sessions[0].samples.at("player_0");
      std::size_t recorded = 0;
      for (const auto& p : trail_prefix(set, 0, "player_0", t)) {
        for (const auto& s : stream) recorded += (s.t == p.t && s.pose.position == p.position);
      }
      CHECK(recorded >= previous);
      previous = recorded;
    }
  }
}
