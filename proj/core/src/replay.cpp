#include "sessionscope/replay.hpp"

#include <algorithm>
#include <cmath>

#include "sessionscope/error.hpp"

namespace sessionscope {

LoadedSet load_sessions(std::vector<SessionLog> logs, std::size_t limit) {
  if (limit > kSessionPalette.size()) {
    throw Error(ErrorKind::Argument, "load limit exceeds palette size " +
                                         std::to_string(kSessionPalette.size()));
  }
  if (logs.empty()) throw Error(ErrorKind::Argument, "no sessions to load");
  if (logs.size() > limit) {
    throw Error(ErrorKind::Capacity, "cannot load " + std::to_string(logs.size()) +
                                         " sessions; limit is " + std::to_string(limit));
  }
  LoadedSet set;
  set.sessions = std::move(logs);
  for (std::size_t i = 0; i < set.sessions.size(); ++i) {
    set.colors.push_back(kSessionPalette[i]);
    set.duration_max = std::max(set.duration_max, set.sessions[i].duration);
  }
  return set;
}

// Transport --------------------------------------------------------------

std::string_view to_string(TransportMode m) {
  switch (m) {
    case TransportMode::Stopped: return "Stopped";
    case TransportMode::Playing: return "Playing";
    case TransportMode::Paused: return "Paused";
  }
  return "Stopped";
}

std::string_view to_string(Direction d) { return d == Direction::Forward ? "Forward" : "Backward"; }

std::string_view to_string(TransportCommandKind k) {
  switch (k) {
    case TransportCommandKind::Play: return "play";
    case TransportCommandKind::Pause: return "pause";
    case TransportCommandKind::Resume: return "resume";
    case TransportCommandKind::Rewind: return "rewind";
    case TransportCommandKind::FastForward: return "fast_forward";
    case TransportCommandKind::Stop: return "stop";
    case TransportCommandKind::Seek: return "seek";
  }
  return "play";
}

TransportCommandKind parse_transport_command(std::string_view name) {
  for (auto k : {TransportCommandKind::Play, TransportCommandKind::Pause,
                 TransportCommandKind::Resume, TransportCommandKind::Rewind,
                 TransportCommandKind::FastForward, TransportCommandKind::Stop,
                 TransportCommandKind::Seek}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorKind::Argument, "unknown transport command '" + std::string(name) + "'");
}

Transport::Transport(double duration_max, MetricsRecorder* metrics, TransportRates rates)
    : duration_max_(duration_max), metrics_(metrics), rates_(rates) {
  if (!(duration_max >= 0.0) || !std::isfinite(duration_max)) {
    throw Error(ErrorKind::Argument, "duration_max must be finite and non-negative");
  }
}

void Transport::start(Direction direction, double rate) {
  state_.mode = TransportMode::Playing;
  state_.direction = direction;
  state_.rate = rate;
  has_played_ = true;
}

TransportState Transport::apply(const TransportCommand& cmd) {
  auto count = [this](MetricKind kind) {
    if (metrics_) metrics_->record(kind);
  };
  switch (cmd.kind) {
    case TransportCommandKind::Play:
      start(Direction::Forward, rates_.play);
      count(MetricKind::Played);
      break;
    case TransportCommandKind::FastForward:
      start(Direction::Forward, rates_.fast_forward);
      count(MetricKind::PlayedForward);
      break;
    case TransportCommandKind::Rewind:
      start(Direction::Backward, rates_.rewind);
      count(MetricKind::PlayedReverse);
      break;
    case TransportCommandKind::Pause:
      state_.mode = TransportMode::Paused;
      count(MetricKind::Paused);
      break;
    case TransportCommandKind::Resume:
      if (has_played_) {
        state_.mode = TransportMode::Playing;
      } else {
        start(Direction::Forward, rates_.play);
        count(MetricKind::Played);
      }
      break;
    case TransportCommandKind::Stop:
      state_.mode = TransportMode::Stopped;
      state_.t = 0.0;
      break;
    case TransportCommandKind::Seek:
      if (!std::isfinite(cmd.seek_t)) {
        throw Error(ErrorKind::Argument, "seek target must be finite");
      }
      state_.t = std::clamp(cmd.seek_t, 0.0, duration_max_);
      break;
  }
  return state_;
}

TransportState Transport::advance(double wall_dt) {
  if (!(wall_dt >= 0.0) || !std::isfinite(wall_dt)) {
    throw Error(ErrorKind::Argument, "wall_dt must be finite and non-negative");
  }
  if (state_.mode != TransportMode::Playing) return state_;
  const double sign = state_.direction == Direction::Forward ? 1.0 : -1.0;
  const double target = state_.t + sign * state_.rate * wall_dt;
  state_.t = std::clamp(target, 0.0, duration_max_);
  const bool at_end = state_.direction == Direction::Forward ? state_.t >= duration_max_
                                                             : state_.t <= 0.0;
  if (at_end) state_.mode = TransportMode::Paused;
  return state_;
}

void Transport::auto_pause() {
  if (state_.mode == TransportMode::Playing) state_.mode = TransportMode::Paused;
}

// Filters ----------------------------------------------------------------

std::string_view to_string(FilterCategory c) {
  switch (c) {
    case FilterCategory::Player: return "Player";
    case FilterCategory::Camera: return "Camera";
    case FilterCategory::Hand: return "Hand";
    case FilterCategory::AudioSource: return "AudioSource";
    case FilterCategory::Custom: return "Custom";
    case FilterCategory::Statics: return "Statics";
    case FilterCategory::Inputs: return "Inputs";
    case FilterCategory::Audio: return "Audio";
    case FilterCategory::Trails: return "Trails";
  }
  return "Custom";
}

const std::vector<FilterCategory>& all_filter_categories() {
  static const std::vector<FilterCategory> all{
      FilterCategory::Player, FilterCategory::Camera,  FilterCategory::Hand,
      FilterCategory::AudioSource, FilterCategory::Custom, FilterCategory::Statics,
      FilterCategory::Inputs, FilterCategory::Audio,   FilterCategory::Trails};
  return all;
}

FilterCategory parse_filter_category(std::string_view name) {
  for (auto c : all_filter_categories()) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::Argument, "unknown filter category '" + std::string(name) + "'");
}

FilterCategory filter_category(Category c) {
  switch (c) {
    case Category::Player: return FilterCategory::Player;
    case Category::Camera: return FilterCategory::Camera;
    case Category::Hand: return FilterCategory::Hand;
    case Category::AudioSource: return FilterCategory::AudioSource;
    case Category::Custom: return FilterCategory::Custom;
  }
  return FilterCategory::Custom;
}

FilterSet FilterSet::all() {
  FilterSet f;
  f.enabled.insert(all_filter_categories().begin(), all_filter_categories().end());
  return f;
}

bool FilterSet::session_on(std::size_t session) const {
  auto it = session_enabled.find(session);
  return it == session_enabled.end() || it->second;
}

bool FilterSet::object_on(const std::string& id, FilterCategory c) const {
  if (auto it = object_overrides.find(id); it != object_overrides.end()) return it->second;
  return category_on(c);
}

void check_filters(const LoadedSet& set, const FilterSet& filters) {
  for (const auto& [id, on] : filters.object_overrides) {
    const bool known = std::any_of(set.sessions.begin(), set.sessions.end(),
                                   [&](const SessionLog& log) {
                                     return log.find_object(id) || log.find_static(id);
                                   });
    if (!known) throw Error(ErrorKind::Reference, "filter override for unknown object '" + id + "'");
  }
  for (const auto& [index, on] : filters.session_enabled) {
    if (index >= set.sessions.size()) {
      throw Error(ErrorKind::Argument, "filter names session " + std::to_string(index) +
                                           " but only " + std::to_string(set.sessions.size()) +
                                           " are loaded");
    }
  }
}

// Frames -----------------------------------------------------------------

namespace {

template <class Stream>
std::size_t first_after(const Stream& stream, double t) {
  auto it = std::upper_bound(stream.begin(), stream.end(), t,
                             [](double value, const auto& s) { return value < s.t; });
  return static_cast<std::size_t>(it - stream.begin());
}

Pose interpolate(const Pose& a, const Pose& b, double u) {
  return {lerp_position(a.position, b.position, u),
          slerp_orientation(a.orientation, b.orientation, u)};
}

}  // namespace

Pose resolve_pose(const std::vector<PoseSample>& stream, double t) {
  if (stream.empty()) throw Error(ErrorKind::EmptyData, "empty pose stream");
  const std::size_t i = first_after(stream, t);
  if (i == 0) return stream.front().pose;
  const PoseSample& s0 = stream[i - 1];
  if (i == stream.size() || s0.t == t) return s0.pose;
  const PoseSample& s1 = stream[i];
  return interpolate(s0.pose, s1.pose, (t - s0.t) / (s1.t - s0.t));
}

HandFrame resolve_hand(const std::vector<HandFrame>& stream, double t) {
  if (stream.empty()) throw Error(ErrorKind::EmptyData, "empty hand stream");
  const std::size_t i = first_after(stream, t);
  if (i == 0) return stream.front();
  const HandFrame& h0 = stream[i - 1];
  if (i == stream.size() || h0.t == t) return h0;
  const HandFrame& h1 = stream[i];
  const double u = (t - h0.t) / (h1.t - h0.t);
  HandFrame out{t, h0.object_id, h0.side, interpolate(h0.wrist, h1.wrist, u), {}};
  const std::size_t n = std::min(h0.joints.size(), h1.joints.size());
  out.joints.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.joints.push_back(lerp_position(h0.joints[j], h1.joints[j], u));
  return out;
}

namespace {

std::vector<TrailPoint> build_trail(const std::vector<PoseSample>& stream, double t) {
  std::vector<TrailPoint> points;
  const std::size_t n = first_after(stream, t);
  points.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) points.push_back({stream[i].t, stream[i].pose.position});
  if (points.empty() || points.back().t < t) {
    points.push_back({t, resolve_pose(stream, t).position});
  }
  return points;
}

}  // namespace

ReplayFrame resolve_frame(const LoadedSet& set, double t, const FilterSet& filters,
                          const TransportState& transport, const ResolveOptions& options) {
  if (!std::isfinite(t)) throw Error(ErrorKind::Argument, "frame time must be finite");
  ReplayFrame frame;
  frame.t = std::clamp(t, 0.0, set.duration_max);
  frame.transport = transport;
  const double at = frame.t;

  for (std::size_t s = 0; s < set.sessions.size(); ++s) {
    if (!filters.session_on(s)) continue;
    const SessionLog& log = set.sessions[s];
    const Rgb color = set.colors[s];

    for (const auto& desc : log.objects) {
      if (!filters.object_on(desc.id, filter_category(desc.category))) continue;
      FrameObject obj{s, desc.id, desc.category, {}, {}, {}, color};
      if (desc.category == Category::Hand) {
        auto it = log.hands.find(desc.id);
        if (it == log.hands.end() || it->second.empty()) continue;
        HandFrame h = resolve_hand(it->second, at);
        obj.pose = h.wrist;
        obj.joints = std::move(h.joints);
      } else {
        auto it = log.samples.find(desc.id);
        if (it == log.samples.end() || it->second.empty()) continue;
        obj.pose = resolve_pose(it->second, at);
        if (filters.category_on(FilterCategory::Trails)) {
          frame.trails.push_back({s, desc.id, color, build_trail(it->second, at)});
        }
      }
      if (auto cam = log.camera_params.find(desc.id); cam != log.camera_params.end()) {
        obj.camera = cam->second;
      }
      frame.objects.push_back(std::move(obj));
    }

    for (const auto& st : log.statics) {
      if (filters.object_on(st.id, FilterCategory::Statics)) frame.statics.push_back({s, st, color});
    }
    if (filters.category_on(FilterCategory::Inputs)) {
      for (const auto& e : log.inputs) {
        if (std::abs(e.t - at) <= options.event_window) frame.inputs.push_back({s, e});
      }
    }
    if (filters.category_on(FilterCategory::Audio)) {
      for (const auto& e : log.audio) {
        if (std::abs(e.t - at) <= options.event_window) frame.audio.push_back({s, e});
      }
    }
  }
  return frame;
}

std::vector<TrailPoint> trail_prefix(const LoadedSet& set, std::size_t session,
                                     const std::string& object_id, double t) {
  if (session >= set.sessions.size()) {
    throw Error(ErrorKind::Reference, "no loaded session " + std::to_string(session));
  }
  if (!std::isfinite(t)) throw Error(ErrorKind::Argument, "trail time must be finite");
  const SessionLog& log = set.sessions[session];
  if (auto it = log.samples.find(object_id); it != log.samples.end() && !it->second.empty()) {
    return build_trail(it->second, t);
  }
  if (auto it = log.hands.find(object_id); it != log.hands.end() && !it->second.empty()) {
    std::vector<PoseSample> wrist;
    wrist.reserve(it->second.size());
    for (const auto& h : it->second) wrist.push_back({h.t, h.object_id, h.wrist});
    return build_trail(wrist, t);
  }
  throw Error(ErrorKind::Reference, "no recorded stream for '" + object_id + "' in session " +
                                        std::to_string(session));
}

ReplaySession::ReplaySession(LoadedSet set, MetricsRecorder* metrics, ResolveOptions options,
                             TransportRates rates)
    : set_(std::move(set)), transport_(set_.duration_max, metrics, rates), options_(options) {}

void ReplaySession::set_filters(FilterSet filters) {
  check_filters(set_, filters);
  filters_ = std::move(filters);
}

ReplayFrame ReplaySession::resolve(double t) const {
  return resolve_frame(set_, t, filters_, transport_.state(), options_);
}

}  // namespace sessionscope
