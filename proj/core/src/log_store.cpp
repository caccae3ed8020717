#include "sessionscope/log_store.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <tuple>

#include "json_util.hpp"

namespace sessionscope {

namespace {

using detail::FieldReader;
using detail::json;
using detail::ordered_json;
using detail::to_json_array;

// Timed records sharing a timestamp are ordered by this rank, then object id.
enum class TimedKind { Sample = 0, Hand = 1, Input = 2, Audio = 3 };

struct TimedRef {
  double t;
  TimedKind kind;
  const std::string* id;
  std::size_t seq;
  const void* record;
};

ordered_json header_record(const SessionLog& log) {
  ordered_json j;
  j["rec"] = "header";
  j["version"] = kLogFormatVersion;
  j["session_id"] = log.session_id;
  j["game"] = log.game_name;
  j["started_at"] = to_iso8601(log.started_at);
  j["sample_hz"] = log.sample_hz;
  j["units"] = "m";
  return j;
}

ordered_json object_record(const ObjectDescriptor& d) {
  ordered_json j;
  j["rec"] = "object";
  j["id"] = d.id;
  j["name"] = d.display_name;
  j["category"] = to_string(d.category);
  j["dynamic"] = d.dynamic;
  if (d.side) j["side"] = to_string(*d.side);
  if (d.joint_count) j["joints"] = *d.joint_count;
  return j;
}

ordered_json camera_record(const std::string& id, const CameraParams& p) {
  ordered_json j;
  j["rec"] = "camera_params";
  j["id"] = id;
  j["vfov_rad"] = p.vfov;
  j["aspect"] = p.aspect;
  j["near_m"] = p.near;
  j["far_m"] = p.far;
  return j;
}

ordered_json static_record(const StaticObject& s) {
  ordered_json j;
  j["rec"] = "static";
  j["id"] = s.id;
  j["name"] = s.display_name;
  j["p"] = to_json_array(s.pose.position);
  j["q"] = to_json_array(s.pose.orientation);
  if (s.extent) j["extent"] = to_json_array(*s.extent);
  return j;
}

ordered_json sample_record(const PoseSample& s) {
  ordered_json j;
  j["rec"] = "sample";
  j["t"] = s.t;
  j["id"] = s.object_id;
  j["p"] = to_json_array(s.pose.position);
  j["q"] = to_json_array(s.pose.orientation);
  return j;
}

ordered_json hand_record(const HandFrame& h) {
  ordered_json j;
  j["rec"] = "hand";
  j["t"] = h.t;
  j["id"] = h.object_id;
  j["side"] = to_string(h.side);
  j["wrist_p"] = to_json_array(h.wrist.position);
  j["wrist_q"] = to_json_array(h.wrist.orientation);
  ordered_json joints = ordered_json::array();
  for (const auto& p : h.joints) joints.push_back(to_json_array(p));
  j["joints"] = std::move(joints);
  return j;
}

ordered_json input_record(const InputEvent& e) {
  ordered_json j;
  j["rec"] = "input";
  j["t"] = e.t;
  j["control"] = e.control;
  j["kind"] = to_string(e.kind);
  j["action"] = e.action;
  j["p"] = to_json_array(e.position);
  j["value"] = e.value;
  return j;
}

ordered_json audio_record(const AudioEvent& e) {
  ordered_json j;
  j["rec"] = "audio";
  j["t"] = e.t;
  j["clip"] = e.clip_name;
  j["len_s"] = e.length;
  j["src_id"] = e.source_object_id;
  j["p"] = to_json_array(e.position);
  return j;
}

ordered_json end_record(const SessionLog& log) {
  ordered_json j;
  j["rec"] = "end";
  j["t"] = log.duration;
  return j;
}

const std::string kNoId;

std::vector<TimedRef> interleave(const SessionLog& log) {
  std::vector<TimedRef> refs;
  for (const auto& [id, stream] : log.samples) {
    for (std::size_t i = 0; i < stream.size(); ++i) {
      refs.push_back({stream[i].t, TimedKind::Sample, &stream[i].object_id, i, &stream[i]});
    }
  }
  for (const auto& [id, stream] : log.hands) {
    for (std::size_t i = 0; i < stream.size(); ++i) {
      refs.push_back({stream[i].t, TimedKind::Hand, &stream[i].object_id, i, &stream[i]});
    }
  }
  for (std::size_t i = 0; i < log.inputs.size(); ++i) {
    refs.push_back({log.inputs[i].t, TimedKind::Input, &kNoId, i, &log.inputs[i]});
  }
  for (std::size_t i = 0; i < log.audio.size(); ++i) {
    refs.push_back(
        {log.audio[i].t, TimedKind::Audio, &log.audio[i].source_object_id, i, &log.audio[i]});
  }
  std::sort(refs.begin(), refs.end(), [](const TimedRef& a, const TimedRef& b) {
    return std::tie(a.t, a.kind, *a.id, a.seq) < std::tie(b.t, b.kind, *b.id, b.seq);
  });
  return refs;
}

class LineSink {
 public:
  explicit LineSink(std::ostream& out) : out_(out) {}

  void put(const ordered_json& record) {
    const std::string line = record.dump();
    out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    out_.put('\n');
    bytes_ += line.size() + 1;
    if (!out_) throw Error(ErrorKind::Io, "failed writing session log");
  }

  std::size_t bytes() const { return bytes_; }

 private:
  std::ostream& out_;
  std::size_t bytes_ = 0;
};

// Parsing ----------------------------------------------------------------

const std::set<std::string, std::less<>>& known_fields(std::string_view rec) {
  static const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> fields{
      {"header", {"rec", "version", "session_id", "game", "started_at", "sample_hz", "units"}},
      {"object", {"rec", "id", "name", "category", "dynamic", "side", "joints"}},
      {"camera_params", {"rec", "id", "vfov_rad", "aspect", "near_m", "far_m"}},
      {"static", {"rec", "id", "name", "p", "q", "extent"}},
      {"sample", {"rec", "t", "id", "p", "q"}},
      {"hand", {"rec", "t", "id", "side", "wrist_p", "wrist_q", "joints"}},
      {"input", {"rec", "t", "control", "kind", "action", "p", "value"}},
      {"audio", {"rec", "t", "clip", "len_s", "src_id", "p"}},
      {"end", {"rec", "t"}},
  };
  static const std::set<std::string, std::less<>> none;
  auto it = fields.find(rec);
  return it == fields.end() ? none : it->second;
}

template <class Enum, class Fn>
Enum parse_enum(const FieldReader& r, std::string_view key, Fn fn) {
  const std::string name = r.string(key);
  try {
    return fn(name);
  } catch (const Error& e) {
    r.fail(std::string(key) + ": unknown value '" + name + "'");
  }
}

HeaderInfo read_header(const FieldReader& r) {
  HeaderInfo h;
  const auto version = r.unsigned_integer("version");
  if (version != static_cast<std::uint64_t>(kLogFormatVersion)) {
    r.fail("unsupported log version " + std::to_string(version));
  }
  h.version = static_cast<int>(version);
  h.session_id = r.string("session_id");
  h.game_name = r.string("game");
  try {
    h.started_at = parse_iso8601(r.string("started_at"));
  } catch (const Error& e) {
    r.fail(std::string("started_at: ") + e.what());
  }
  h.sample_hz = r.number("sample_hz");
  return h;
}

struct PendingRef {
  std::size_t line;
  std::string id;
  const char* what;
  bool allow_static;
};

json parse_line_json(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed JSON: ") + e.what(), line_no);
  }
  if (!j.is_object()) throw Error(ErrorKind::Parse, "record is not a JSON object", line_no);
  auto rec = j.find("rec");
  if (rec == j.end() || !rec->is_string()) {
    throw Error(ErrorKind::Parse, "record is missing the \"rec\" tag", line_no);
  }
  return j;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::size_t write_session(const SessionLog& log, std::ostream& out) {
  if (auto violations = validate_session(log); !violations.empty()) {
    throw Error(ErrorKind::Validation,
                "refusing to write invalid session: " + violations.front().message);
  }
  LineSink sink(out);
  sink.put(header_record(log));
  for (const auto& d : log.objects) sink.put(object_record(d));
  for (const auto& d : log.objects) {
    if (auto it = log.camera_params.find(d.id); it != log.camera_params.end()) {
      sink.put(camera_record(it->first, it->second));
    }
  }
  for (const auto& s : log.statics) sink.put(static_record(s));
  for (const auto& ref : interleave(log)) {
    switch (ref.kind) {
      case TimedKind::Sample: sink.put(sample_record(*static_cast<const PoseSample*>(ref.record))); break;
      case TimedKind::Hand: sink.put(hand_record(*static_cast<const HandFrame*>(ref.record))); break;
      case TimedKind::Input: sink.put(input_record(*static_cast<const InputEvent*>(ref.record))); break;
      case TimedKind::Audio: sink.put(audio_record(*static_cast<const AudioEvent*>(ref.record))); break;
    }
  }
  sink.put(end_record(log));
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "failed flushing session log");
  return sink.bytes();
}

std::string write_session_string(const SessionLog& log) {
  std::ostringstream out;
  write_session(log, out);
  return std::move(out).str();
}

void write_session_file(const SessionLog& log, const std::filesystem::path& path) {
  // Serialize fully before touching the destination.
  const std::string bytes = write_session_string(log);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

SessionLog parse_session(std::istream& in, ParseStats* stats) {
  SessionLog log;
  ParseStats local;
  bool have_header = false;
  bool have_end = false;
  std::vector<PendingRef> pending;
  std::map<std::string, std::size_t> camera_lines;
  std::size_t line_no = 0;
  std::string raw;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_cr(std::move(raw));
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const json j = parse_line_json(line, line_no);
    const std::string rec = j["rec"].get<std::string>();
    const FieldReader r(j, line_no);
    ++local.records;

    const auto& known = known_fields(rec);
    if (known.empty()) r.fail("unknown record kind '" + rec + "'");
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) ++local.unknown_fields;
    }

    if (have_end) throw Error(ErrorKind::Structure, "record after end record", line_no);
    if (!have_header && rec != "header") {
      throw Error(ErrorKind::Structure, "first record must be the header", line_no);
    }

    try {
      if (rec == "header") {
        if (have_header) throw Error(ErrorKind::Structure, "duplicate header", line_no);
        const HeaderInfo h = read_header(r);
        log.session_id = h.session_id;
        log.game_name = h.game_name;
        log.started_at = h.started_at;
        log.sample_hz = h.sample_hz;
        have_header = true;
      } else if (rec == "object") {
        ObjectDescriptor d;
        d.id = r.string("id");
        d.display_name = r.string("name");
        d.category = parse_enum<Category>(r, "category", parse_category);
        d.dynamic = r.boolean("dynamic");
        if (r.has("side")) d.side = parse_enum<HandSide>(r, "side", parse_hand_side);
        if (r.has("joints")) {
          const auto n = r.unsigned_integer("joints");
          if (n > 1024) r.fail("joints count out of range");
          d.joint_count = static_cast<std::uint32_t>(n);
        }
        log.objects.push_back(std::move(d));
      } else if (rec == "camera_params") {
        const std::string id = r.string("id");
        CameraParams p{r.number("vfov_rad"), r.number("aspect"), r.number("near_m"),
                       r.number("far_m")};
        if (!log.camera_params.emplace(id, p).second) {
          r.fail("duplicate camera_params for '" + id + "'");
        }
        pending.push_back({line_no, id, "camera_params", false});
        camera_lines[id] = line_no;
      } else if (rec == "static") {
        StaticObject s;
        s.id = r.string("id");
        s.display_name = r.string("name");
        s.pose = {r.vec3("p"), r.quat("q")};
        if (r.has("extent")) s.extent = r.vec3("extent");
        log.statics.push_back(std::move(s));
      } else if (rec == "sample") {
        PoseSample s;
        s.t = r.number("t");
        s.object_id = r.string("id");
        s.pose = {r.vec3("p"), r.quat("q")};
        pending.push_back({line_no, s.object_id, "sample", false});
        log.samples[s.object_id].push_back(std::move(s));
      } else if (rec == "hand") {
        HandFrame h;
        h.t = r.number("t");
        h.object_id = r.string("id");
        h.side = parse_enum<HandSide>(r, "side", parse_hand_side);
        h.wrist = {r.vec3("wrist_p"), r.quat("wrist_q")};
        const json& joints = r.at("joints");
        if (!joints.is_array()) r.fail("field 'joints' must be an array");
        h.joints.reserve(joints.size());
        for (const auto& p : joints) h.joints.push_back(r.vec3_of(p, "joints[]"));
        pending.push_back({line_no, h.object_id, "hand", false});
        log.hands[h.object_id].push_back(std::move(h));
      } else if (rec == "input") {
        InputEvent e;
        e.t = r.number("t");
        e.control = r.string("control");
        e.kind = parse_enum<InputKind>(r, "kind", parse_input_kind);
        e.action = r.string("action");
        e.position = r.vec3("p");
        e.value = r.number("value");
        log.inputs.push_back(std::move(e));
      } else if (rec == "audio") {
        AudioEvent e;
        e.t = r.number("t");
        e.clip_name = r.string("clip");
        e.length = r.number("len_s");
        e.source_object_id = r.string("src_id");
        e.position = r.vec3("p");
        pending.push_back({line_no, e.source_object_id, "audio", true});
        log.audio.push_back(std::move(e));
      } else if (rec == "end") {
        log.duration = r.number("t");
        have_end = true;
      }
    } catch (const json::exception& e) {
      throw Error(ErrorKind::Parse, e.what(), line_no);
    }
  }
  if (in.bad()) throw Error(ErrorKind::Io, "failed reading session log");
  local.lines = line_no;

  if (!have_header) throw Error(ErrorKind::Structure, "missing header record", line_no);
  if (!have_end) throw Error(ErrorKind::Structure, "missing end record", line_no);

  std::set<std::string, std::less<>> object_ids;
  for (const auto& d : log.objects) object_ids.insert(d.id);
  std::set<std::string, std::less<>> static_ids;
  for (const auto& s : log.statics) static_ids.insert(s.id);
  for (const auto& ref : pending) {
    const bool ok = object_ids.contains(ref.id) || (ref.allow_static && static_ids.contains(ref.id));
    if (!ok) {
      throw Error(ErrorKind::Reference,
                  std::string(ref.what) + " references unregistered object '" + ref.id + "'",
                  ref.line);
    }
  }

  for (auto& [id, stream] : log.samples) {
    std::stable_sort(stream.begin(), stream.end(),
                     [](const PoseSample& a, const PoseSample& b) { return a.t < b.t; });
  }
  for (auto& [id, stream] : log.hands) {
    std::stable_sort(stream.begin(), stream.end(),
                     [](const HandFrame& a, const HandFrame& b) { return a.t < b.t; });
  }
  if (stats) *stats = local;
  return log;
}

SessionLog parse_session_string(std::string_view text, ParseStats* stats) {
  std::istringstream in{std::string(text)};
  return parse_session(in, stats);
}

SessionLog read_session_file(const std::filesystem::path& path, ParseStats* stats) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return parse_session(in, stats);
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::InvalidValue: return "invalid-value";
    case ViolationKind::DuplicateId: return "duplicate-id";
    case ViolationKind::DanglingReference: return "dangling-reference";
    case ViolationKind::Monotonicity: return "monotonicity";
    case ViolationKind::NonUnitQuaternion: return "non-unit-quaternion";
    case ViolationKind::JointCount: return "joint-count";
    case ViolationKind::MissingCameraParams: return "missing-camera-params";
    case ViolationKind::DurationBound: return "duration-bound";
  }
  return "unknown";
}

std::vector<Violation> validate_session(const SessionLog& log) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, std::string id, std::string message) {
    out.push_back({kind, std::move(id), std::move(message)});
  };
  auto is_unit = [](const Quat& q) {
    return is_finite(q) && std::abs(norm(q) - 1.0) <= kUnitTolerance;
  };
  auto valid_time = [](double t) { return std::isfinite(t) && t >= 0.0; };

  if (!(log.sample_hz > 0.0) || !std::isfinite(log.sample_hz)) {
    report(ViolationKind::InvalidValue, "", "sample_hz must be positive");
  }
  if (!valid_time(log.duration)) {
    report(ViolationKind::InvalidValue, "", "duration must be finite and non-negative");
  }

  std::map<std::string, const ObjectDescriptor*, std::less<>> objects;
  std::set<std::string, std::less<>> statics;
  for (const auto& d : log.objects) {
    if (d.id.empty()) report(ViolationKind::InvalidValue, "", "object with empty id");
    if (!objects.emplace(d.id, &d).second) {
      report(ViolationKind::DuplicateId, d.id, "duplicate object id '" + d.id + "'");
    }
    if (d.category == Category::Hand && (!d.side || !d.joint_count)) {
      report(ViolationKind::InvalidValue, d.id, "hand '" + d.id + "' lacks side or joint count");
    }
    if (d.category == Category::Camera && !log.camera_params.contains(d.id)) {
      report(ViolationKind::MissingCameraParams, d.id, "camera '" + d.id + "' has no camera_params");
    }
  }
  for (const auto& s : log.statics) {
    if (s.id.empty()) report(ViolationKind::InvalidValue, "", "static with empty id");
    if (objects.contains(s.id) || !statics.insert(s.id).second) {
      report(ViolationKind::DuplicateId, s.id, "duplicate object id '" + s.id + "'");
    }
    if (!is_finite(s.pose.position)) {
      report(ViolationKind::InvalidValue, s.id, "static '" + s.id + "' has non-finite position");
    }
    if (!is_unit(s.pose.orientation)) {
      report(ViolationKind::NonUnitQuaternion, s.id, "static '" + s.id + "' orientation not unit");
    }
  }
  for (const auto& [id, params] : log.camera_params) {
    if (!objects.contains(id)) {
      report(ViolationKind::DanglingReference, id, "camera_params for unknown object '" + id + "'");
    }
    if (!params.valid()) {
      report(ViolationKind::InvalidValue, id, "camera '" + id + "' has invalid parameters");
    }
  }

  for (const auto& [id, stream] : log.samples) {
    auto it = objects.find(id);
    if (it == objects.end()) {
      report(ViolationKind::DanglingReference, id, "samples for unknown object '" + id + "'");
    } else if (!it->second->dynamic || it->second->category == Category::Hand) {
      report(ViolationKind::DanglingReference, id,
             "pose samples for non-sampled object '" + id + "'");
    }
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& s = stream[i];
      if (s.object_id != id) {
        report(ViolationKind::DanglingReference, id, "sample filed under wrong object '" + id + "'");
      }
      if (!valid_time(s.t)) {
        report(ViolationKind::InvalidValue, id, "sample of '" + id + "' has invalid timestamp");
      }
      if (i > 0 && !(stream[i - 1].t < s.t)) {
        report(ViolationKind::Monotonicity, id,
               "samples of '" + id + "' not strictly increasing at t=" + std::to_string(s.t));
      }
      if (!is_finite(s.pose.position)) {
        report(ViolationKind::InvalidValue, id, "sample of '" + id + "' has non-finite position");
      }
      if (!is_unit(s.pose.orientation)) {
        report(ViolationKind::NonUnitQuaternion, id,
               "sample of '" + id + "' at t=" + std::to_string(s.t) + " has non-unit quaternion");
      }
    }
  }

  for (const auto& [id, stream] : log.hands) {
    auto it = objects.find(id);
    const ObjectDescriptor* desc = it == objects.end() ? nullptr : it->second;
    if (!desc || desc->category != Category::Hand) {
      report(ViolationKind::DanglingReference, id, "hand frames for unknown hand '" + id + "'");
    }
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& h = stream[i];
      if (h.object_id != id) {
        report(ViolationKind::DanglingReference, id, "hand frame filed under wrong object '" + id + "'");
      }
      if (!valid_time(h.t)) {
        report(ViolationKind::InvalidValue, id, "hand frame of '" + id + "' has invalid timestamp");
      }
      if (i > 0 && !(stream[i - 1].t < h.t)) {
        report(ViolationKind::Monotonicity, id,
               "hand frames of '" + id + "' not strictly increasing at t=" + std::to_string(h.t));
      }
      if (desc && desc->joint_count && h.joints.size() != *desc->joint_count) {
        report(ViolationKind::JointCount, id,
               "hand '" + id + "' frame at t=" + std::to_string(h.t) + " has " +
                   std::to_string(h.joints.size()) + " joints, expected " +
                   std::to_string(*desc->joint_count));
      }
      if (desc && desc->side && h.side != *desc->side) {
        report(ViolationKind::InvalidValue, id, "hand '" + id + "' frame side mismatch");
      }
      if (!is_finite(h.wrist.position) ||
          !std::all_of(h.joints.begin(), h.joints.end(), [](const Vec3& p) { return is_finite(p); })) {
        report(ViolationKind::InvalidValue, id, "hand '" + id + "' has non-finite joints");
      }
      if (!is_unit(h.wrist.orientation)) {
        report(ViolationKind::NonUnitQuaternion, id, "hand '" + id + "' wrist orientation not unit");
      }
    }
  }

  for (const auto& e : log.inputs) {
    if (!valid_time(e.t) || !std::isfinite(e.value) || e.value < -1.0 || e.value > 1.0 ||
        !is_finite(e.position)) {
      report(ViolationKind::InvalidValue, "", "input '" + e.control + "' has invalid values");
    }
  }
  for (const auto& e : log.audio) {
    if (!objects.contains(e.source_object_id) && !statics.contains(e.source_object_id)) {
      report(ViolationKind::DanglingReference, e.source_object_id,
             "audio '" + e.clip_name + "' references unknown source '" + e.source_object_id + "'");
    }
    if (!valid_time(e.t) || !(e.length >= 0.0) || !std::isfinite(e.length) ||
        !is_finite(e.position)) {
      report(ViolationKind::InvalidValue, e.source_object_id,
             "audio '" + e.clip_name + "' has invalid values");
    }
  }

  if (std::isfinite(log.duration) && log.duration < log.max_timestamp()) {
    report(ViolationKind::DurationBound, "",
           "duration " + std::to_string(log.duration) + " is before the last timestamp " +
               std::to_string(log.max_timestamp()));
  }
  return out;
}

std::vector<DiscoveredLog> discover_logs(const std::filesystem::path& directory) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::directory_iterator it(directory, ec);
  if (ec) {
    throw Error(ErrorKind::Io, "cannot list '" + directory.string() + "': " + ec.message());
  }
  std::vector<DiscoveredLog> out;
  for (const auto& entry : it) {
    const std::string name = entry.path().filename().string();
    if (name.size() <= kLogExtension.size() || !name.ends_with(kLogExtension)) continue;
    if (!entry.is_regular_file(ec)) continue;

    DiscoveredLog found;
    found.path = entry.path();
    std::ifstream in(entry.path(), std::ios::binary);
    std::string first;
    if (!in || !std::getline(in, first)) {
      found.error = "unreadable or empty file";
    } else {
      found.bytes_read = first.size() + 1;
      try {
        const json j = parse_line_json(strip_cr(first), 1);
        if (j["rec"] != "header") throw Error(ErrorKind::Structure, "first record is not a header", 1);
        found.header = read_header(FieldReader(j, 1));
      } catch (const Error& e) {
        found.error = e.what();
      } catch (const json::exception& e) {
        found.error = e.what();
      }
    }
    out.push_back(std::move(found));
  }
  std::sort(out.begin(), out.end(), [](const DiscoveredLog& a, const DiscoveredLog& b) {
    return a.path.filename().string() < b.path.filename().string();
  });
  return out;
}

}  // namespace sessionscope
