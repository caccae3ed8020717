#include "sessionscope/service.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "json_util.hpp"
#include "sessionscope/annotations.hpp"
#include "sessionscope/coverage.hpp"
#include "sessionscope/heatmap.hpp"
#include "sessionscope/log_store.hpp"

namespace sessionscope {

namespace {

using detail::json;
using detail::ordered_json;
using detail::to_json_array;

ordered_json color_json(const Rgb& c) { return ordered_json::array({c.r, c.g, c.b}); }

ordered_json transport_json(const TransportState& s, double duration_max) {
  ordered_json j;
  j["mode"] = to_string(s.mode);
  j["direction"] = to_string(s.direction);
  j["rate"] = s.rate;
  j["t"] = s.t;
  j["duration_max"] = duration_max;
  return j;
}

ordered_json camera_json(const CameraParams& p) {
  ordered_json j;
  j["vfov_rad"] = p.vfov;
  j["aspect"] = p.aspect;
  j["near_m"] = p.near;
  j["far_m"] = p.far;
  return j;
}

ordered_json trail_json(const Trail& trail) {
  ordered_json j;
  j["session"] = trail.session;
  j["id"] = trail.object_id;
  j["color"] = color_json(trail.color);
  ordered_json points = ordered_json::array();
  for (const auto& p : trail.points) {
    points.push_back(ordered_json::array({p.t, p.position.x, p.position.y, p.position.z}));
  }
  j["points"] = std::move(points);
  return j;
}

ordered_json frame_json(const ReplayFrame& f, double duration_max) {
  ordered_json j;
  j["t"] = f.t;
  j["transport"] = transport_json(f.transport, duration_max);
  ordered_json objects = ordered_json::array();
  for (const auto& o : f.objects) {
    ordered_json e;
    e["session"] = o.session;
    e["id"] = o.object_id;
    e["category"] = to_string(o.category);
    e["p"] = to_json_array(o.pose.position);
    e["q"] = to_json_array(o.pose.orientation);
    e["color"] = color_json(o.color);
    if (!o.joints.empty()) {
      ordered_json joints = ordered_json::array();
      for (const auto& p : o.joints) joints.push_back(to_json_array(p));
      e["joints"] = std::move(joints);
    }
    if (o.camera) e["camera"] = camera_json(*o.camera);
    objects.push_back(std::move(e));
  }
  j["objects"] = std::move(objects);

  ordered_json statics = ordered_json::array();
  for (const auto& s : f.statics) {
    ordered_json e;
    e["session"] = s.session;
    e["id"] = s.object.id;
    e["name"] = s.object.display_name;
    e["p"] = to_json_array(s.object.pose.position);
    e["q"] = to_json_array(s.object.pose.orientation);
    if (s.object.extent) e["extent"] = to_json_array(*s.object.extent);
    e["color"] = color_json(s.color);
    statics.push_back(std::move(e));
  }
  j["statics"] = std::move(statics);

  ordered_json trails = ordered_json::array();
  for (const auto& t : f.trails) trails.push_back(trail_json(t));
  j["trails"] = std::move(trails);

  ordered_json inputs = ordered_json::array();
  for (const auto& m : f.inputs) {
    ordered_json e;
    e["session"] = m.session;
    e["t"] = m.event.t;
    e["control"] = m.event.control;
    e["kind"] = to_string(m.event.kind);
    e["action"] = m.event.action;
    e["p"] = to_json_array(m.event.position);
    e["value"] = m.event.value;
    inputs.push_back(std::move(e));
  }
  j["inputs"] = std::move(inputs);

  ordered_json audio = ordered_json::array();
  for (const auto& m : f.audio) {
    ordered_json e;
    e["session"] = m.session;
    e["t"] = m.event.t;
    e["clip"] = m.event.clip_name;
    e["len_s"] = m.event.length;
    e["src_id"] = m.event.source_object_id;
    e["p"] = to_json_array(m.event.position);
    audio.push_back(std::move(e));
  }
  j["audio"] = std::move(audio);
  return j;
}

ordered_json annotation_json(const Annotation& a) {
  ordered_json j;
  j["id"] = a.id;
  j["p"] = to_json_array(a.anchor_position);
  j["t"] = a.anchor_t;
  j["text"] = a.text;
  j["created_at"] = to_iso8601(a.created_at);
  if (a.author) j["author"] = *a.author;
  return j;
}

ordered_json filters_json(const FilterSet& f) {
  ordered_json categories = ordered_json::object();
  for (auto c : all_filter_categories()) categories[std::string(to_string(c))] = f.category_on(c);
  ordered_json objects = ordered_json::object();
  for (const auto& [id, on] : f.object_overrides) objects[id] = on;
  ordered_json sessions = ordered_json::object();
  for (const auto& [index, on] : f.session_enabled) sessions[std::to_string(index)] = on;
  ordered_json j;
  j["categories"] = std::move(categories);
  j["objects"] = std::move(objects);
  j["sessions"] = std::move(sessions);
  return j;
}

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Capacity:
    case ErrorKind::State: return 409;
    case ErrorKind::Reference: return 404;
    case ErrorKind::EmptyData:
    case ErrorKind::Structure:
    case ErrorKind::Validation: return 422;
    case ErrorKind::Io: return 500;
    default: return 400;
  }
}

void send_json(httplib::Response& res, const ordered_json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view kind, const std::string& message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  send_json(res, j, status);
}

json parse_body(const httplib::Request& req) {
  try {
    json j = json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorKind::Argument, "request body must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Argument, std::string("malformed JSON body: ") + e.what());
  }
}

double number_param(const httplib::Request& req, const char* name, double fallback) {
  if (!req.has_param(name)) return fallback;
  const std::string text = req.get_param_value(name);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::Argument, std::string("query parameter '") + name + "' is not a number");
  }
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double steady_seconds() {
  using namespace std::chrono;
  return duration<double>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

struct Server::Impl {
  ServerOptions options;
  Clock clock;
  httplib::Server http;
  std::thread worker;
  int bound_port = -1;

  // Guarded by `mutex`.
  mutable std::mutex mutex;
  std::optional<ReplaySession> replay;
  std::vector<std::filesystem::path> loaded_paths;
  AnnotationStore notes;
  double last_tick = 0.0;
  MetricsRecorder metrics;

  Impl(ServerOptions opts, Clock c) : options(std::move(opts)), clock(std::move(c)) {
    if (!clock) clock = steady_seconds;
    if (!std::filesystem::is_directory(options.log_dir)) {
      throw Error(ErrorKind::Io, "log directory '" + options.log_dir.string() + "' does not exist");
    }
    if (std::filesystem::exists(notes_path())) notes.load(notes_path());
    routes();
  }

  std::filesystem::path notes_path() const { return options.log_dir / kNotesFileName; }
  std::filesystem::path metrics_path() const { return options.log_dir / kMetricsFileName; }

  // Brings the transport clock up to the current wall time. Caller holds mutex.
  void tick() {
    const double now = clock();
    const double dt = std::max(0.0, now - last_tick);
    last_tick = now;
    if (replay) replay->advance_clock(dt);
  }

  ReplaySession& require_replay() {
    if (!replay) throw Error(ErrorKind::State, "no sessions loaded");
    return *replay;
  }

  template <class Fn>
  httplib::Server::Handler guarded(Fn fn) {
    return [this, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        std::lock_guard lock(mutex);
        fn(req, res);
      } catch (const Error& e) {
        send_error(res, status_for(e.kind()), to_string(e.kind()), e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  std::filesystem::path resolve_log_path(const std::string& name) const {
    const std::filesystem::path requested(name);
    const std::filesystem::path candidate =
        requested.is_absolute() ? requested : options.log_dir / requested;
    const std::string file = candidate.filename().string();
    if (!file.ends_with(kLogExtension) || !std::filesystem::is_regular_file(candidate)) {
      throw Error(ErrorKind::Reference, "unknown session '" + name + "'");
    }
    return candidate;
  }

  ordered_json loaded_json() const {
    const LoadedSet& set = replay->loaded();
    ordered_json sessions = ordered_json::array();
    for (std::size_t i = 0; i < set.sessions.size(); ++i) {
      const SessionLog& log = set.sessions[i];
      ordered_json s;
      s["index"] = i;
      s["file"] = loaded_paths[i].filename().string();
      s["session_id"] = log.session_id;
      s["game"] = log.game_name;
      s["duration"] = log.duration;
      s["color"] = color_json(set.colors[i]);
      ordered_json objects = ordered_json::array();
      for (const auto& d : log.objects) {
        objects.push_back({{"id", d.id}, {"name", d.display_name},
                           {"category", std::string(to_string(d.category))}});
      }
      s["objects"] = std::move(objects);
      sessions.push_back(std::move(s));
    }
    ordered_json j;
    j["sessions"] = std::move(sessions);
    j["duration_max"] = set.duration_max;
    j["transport"] = transport_json(replay->transport(), set.duration_max);
    return j;
  }

  DensityGrid heatmap(const httplib::Request& req) {
    ReplaySession& r = require_replay();
    HeatmapOptions opts;
    opts.cell_size = number_param(req, "cell", kDefaultCellSize);
    if (!(opts.cell_size > 0.0)) throw Error(ErrorKind::Argument, "cell must be positive");
    if (req.has_param("categories")) {
      opts.categories.clear();
      for (const auto& name : split_csv(req.get_param_value("categories"))) {
        try {
          opts.categories.insert(parse_category(name));
        } catch (const Error& e) {
          throw Error(ErrorKind::Argument, e.what());
        }
      }
    }
    DensityGrid grid = accumulate_density(r.loaded(), r.filters(), std::nullopt, opts);
    if (req.has_param("toggle") && req.get_param_value("toggle") == "true") {
      metrics.record(MetricKind::HeatmapToggled);
    }
    return grid;
  }

  void routes() {
    http.Get("/api/sessions", guarded([this](const httplib::Request&, httplib::Response& res) {
      ordered_json sessions = ordered_json::array();
      for (const auto& found : discover_logs(options.log_dir)) {
        ordered_json s;
        s["file"] = found.path.filename().string();
        if (found.header) {
          s["session_id"] = found.header->session_id;
          s["game"] = found.header->game_name;
          s["started_at"] = to_iso8601(found.header->started_at);
          s["sample_hz"] = found.header->sample_hz;
        } else {
          s["error"] = found.error;
        }
        sessions.push_back(std::move(s));
      }
      send_json(res, {{"sessions", std::move(sessions)}, {"load_limit", options.load_limit}});
    }));

    http.Post("/api/load", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const json body = parse_body(req);
      const auto paths = body.find("paths");
      if (paths == body.end() || !paths->is_array()) {
        throw Error(ErrorKind::Argument, "body must be {\"paths\": [...]}");
      }
      if (paths->size() > options.load_limit) {
        throw Error(ErrorKind::Capacity, "cannot load " + std::to_string(paths->size()) +
                                             " sessions; limit is " +
                                             std::to_string(options.load_limit));
      }
      std::vector<std::filesystem::path> resolved;
      for (const auto& p : *paths) {
        if (!p.is_string()) throw Error(ErrorKind::Argument, "paths must be strings");
        resolved.push_back(resolve_log_path(p.get<std::string>()));
      }
      std::vector<SessionLog> logs;
      for (const auto& path : resolved) {
        try {
          logs.push_back(read_session_file(path));
        } catch (const Error& e) {
          throw Error(ErrorKind::Validation, path.filename().string() + ": " + e.what());
        }
      }
      LoadedSet set = load_sessions(std::move(logs), options.load_limit);
      metrics.reset();
      replay.emplace(std::move(set), &metrics, options.resolve);
      loaded_paths = std::move(resolved);
      last_tick = clock();
      send_json(res, loaded_json());
    }));

    http.Post("/api/transport", guarded([this](const httplib::Request& req, httplib::Response& res) {
      ReplaySession& r = require_replay();
      const json body = parse_body(req);
      const detail::FieldReader fields(body, 0);
      TransportCommand cmd;
      try {
        cmd.kind = parse_transport_command(fields.string("cmd"));
        if (cmd.kind == TransportCommandKind::Seek) cmd.seek_t = fields.number("t");
      } catch (const Error& e) {
        throw Error(ErrorKind::Argument, e.what());
      }
      tick();
      const TransportState s = r.apply_transport(cmd);
      send_json(res, transport_json(s, r.loaded().duration_max));
    }));

    http.Get("/api/transport", guarded([this](const httplib::Request&, httplib::Response& res) {
      ReplaySession& r = require_replay();
      tick();
      send_json(res, transport_json(r.transport(), r.loaded().duration_max));
    }));

    http.Get("/api/frame", guarded([this](const httplib::Request&, httplib::Response& res) {
      ReplaySession& r = require_replay();
      tick();
      send_json(res, frame_json(r.frame(), r.loaded().duration_max));
    }));

    http.Get("/api/trails", guarded([this](const httplib::Request& req, httplib::Response& res) {
      ReplaySession& r = require_replay();
      tick();
      const double t = number_param(req, "t", r.transport().t);
      const ReplayFrame f = r.resolve(t);
      ordered_json trails = ordered_json::array();
      for (const auto& trail : f.trails) trails.push_back(trail_json(trail));
      send_json(res, {{"t", f.t}, {"trails", std::move(trails)}});
    }));

    http.Get("/api/heatmap", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const DensityGrid grid = heatmap(req);
      ordered_json j = ordered_json::parse(grid_to_json(grid));
      j["max_count"] = grid.max_count;
      send_json(res, j);
    }));

    http.Get("/api/heatmap.png", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const DensityGrid grid = heatmap(req);
      const auto png = encode_png(colorize(grid));
      res.status = 200;
      res.set_content(std::string(png.begin(), png.end()), "image/png");
    }));

    http.Get("/api/filters", guarded([this](const httplib::Request&, httplib::Response& res) {
      send_json(res, filters_json(require_replay().filters()));
    }));

    http.Post("/api/filters", guarded([this](const httplib::Request& req, httplib::Response& res) {
      ReplaySession& r = require_replay();
      const json body = parse_body(req);
      FilterSet next = body.value("reset", false) ? FilterSet::all() : r.filters();
      if (auto it = body.find("categories"); it != body.end()) {
        if (!it->is_object()) throw Error(ErrorKind::Argument, "categories must be an object");
        for (const auto& [name, on] : it->items()) {
          if (!on.is_boolean()) throw Error(ErrorKind::Argument, "category toggles must be booleans");
          const FilterCategory c = parse_filter_category(name);
          if (on.get<bool>()) {
            next.enabled.insert(c);
          } else {
            next.enabled.erase(c);
          }
        }
      }
      if (auto it = body.find("objects"); it != body.end()) {
        if (!it->is_object()) throw Error(ErrorKind::Argument, "objects must be an object");
        for (const auto& [id, on] : it->items()) {
          if (on.is_null()) {
            next.object_overrides.erase(id);
          } else if (on.is_boolean()) {
            next.object_overrides[id] = on.get<bool>();
          } else {
            throw Error(ErrorKind::Argument, "object overrides must be booleans or null");
          }
        }
      }
      if (auto it = body.find("sessions"); it != body.end()) {
        if (!it->is_object()) throw Error(ErrorKind::Argument, "sessions must be an object");
        for (const auto& [key, on] : it->items()) {
          if (!on.is_boolean()) throw Error(ErrorKind::Argument, "session toggles must be booleans");
          std::size_t index = 0;
          try {
            index = std::stoul(key);
          } catch (const std::exception&) {
            throw Error(ErrorKind::Argument, "session keys must be indices");
          }
          next.session_enabled[index] = on.get<bool>();
        }
      }
      r.set_filters(std::move(next));
      send_json(res, filters_json(r.filters()));
    }));

    http.Get("/api/annotations", guarded([this](const httplib::Request& req, httplib::Response& res) {
      std::optional<TimeWindow> window;
      if (req.has_param("t0") || req.has_param("t1")) {
        window = TimeWindow{number_param(req, "t0", -HUGE_VAL), number_param(req, "t1", HUGE_VAL)};
      }
      std::optional<RadiusQuery> radius;
      if (req.has_param("r")) {
        radius = RadiusQuery{{number_param(req, "x", 0.0), number_param(req, "y", 0.0),
                              number_param(req, "z", 0.0)},
                             number_param(req, "r", 0.0)};
      }
      ordered_json list = ordered_json::array();
      for (const auto& a : notes.query(window, radius)) list.push_back(annotation_json(a));
      send_json(res, {{"annotations", std::move(list)}});
    }));

    http.Post("/api/annotations", guarded([this](const httplib::Request& req, httplib::Response& res) {
      ReplaySession& r = require_replay();
      const json body = parse_body(req);
      const detail::FieldReader fields(body, 0);
      Vec3 p;
      std::string text;
      std::optional<std::string> author;
      try {
        p = fields.vec3("p");
        text = fields.string("text");
        if (fields.has("author") && !body["author"].is_null()) author = fields.string("author");
      } catch (const Error& e) {
        throw Error(ErrorKind::Argument, e.what());
      }
      tick();
      const Annotation note = annotate(r, notes, &metrics, p, std::move(text), std::move(author));
      notes.save(notes_path());
      ordered_json j = annotation_json(note);
      j["transport"] = transport_json(r.transport(), r.loaded().duration_max);
      send_json(res, j, 201);
    }));

    http.Get("/api/coverage", guarded([this](const httplib::Request& req, httplib::Response& res) {
      ReplaySession& r = require_replay();
      const double cell = number_param(req, "cell", kDefaultCellSize);
      const double height = number_param(req, "height", kDefaultProbeHeight);
      const std::string only = req.has_param("camera") ? req.get_param_value("camera") : "";
      const LoadedSet& set = r.loaded();
      const FilterSet all = FilterSet::all();
      HeatmapOptions area;
      area.categories = {Category::Player, Category::Camera, Category::Custom, Category::AudioSource};
      area.cell_size = cell;
      const GridSpec spec = derive_grid_spec(heatmap_positions(set, all, area), cell);

      std::optional<CoverageGrid> total;
      for (std::size_t s = 0; s < set.sessions.size(); ++s) {
        if (!r.filters().session_on(s)) continue;
        for (const auto& [id, params] : set.sessions[s].camera_params) {
          if (!only.empty() && id != only) continue;
          auto stream = set.sessions[s].samples.find(id);
          if (stream == set.sessions[s].samples.end() || stream->second.empty()) continue;
          CoverageGrid g = compute_coverage(stream->second, params, spec, height);
          if (total) {
            merge_coverage(*total, g);
          } else {
            total = std::move(g);
          }
        }
      }
      if (!total) throw Error(ErrorKind::EmptyData, "no camera streams to compute coverage from");
      res.status = 200;
      res.set_content(coverage_report_json(*total), "application/json");
    }));

    http.Get("/api/metrics", guarded([this](const httplib::Request&, httplib::Response& res) {
      res.status = 200;
      res.set_content(metrics_to_json(metrics.snapshot()), "application/json");
    }));

    http.Post("/api/metrics/save", guarded([this](const httplib::Request&, httplib::Response& res) {
      metrics.save(metrics_path());
      send_json(res, {{"path", metrics_path().string()}});
    }));

    if (options.static_dir && std::filesystem::is_directory(*options.static_dir)) {
      http.set_mount_point("/", options.static_dir->string());
    }
  }

  int bind() {
    if (options.port == 0) {
      bound_port = http.bind_to_any_port(options.host);
    } else {
      bound_port = http.bind_to_port(options.host, options.port) ? options.port : -1;
    }
    if (bound_port < 0) {
      throw Error(ErrorKind::Io, "cannot bind " + options.host + ":" + std::to_string(options.port));
    }
    return bound_port;
  }
};

Server::Server(ServerOptions options, Clock clock)
    : impl_(std::make_unique<Impl>(std::move(options), std::move(clock))) {}

Server::~Server() {
  try {
    stop();
  } catch (...) {
  }
}

int Server::start() {
  const int port = impl_->bind();
  impl_->worker = std::thread([this] { impl_->http.listen_after_bind(); });
  impl_->http.wait_until_ready();
  return port;
}

void Server::run() {
  impl_->bind();
  impl_->http.listen_after_bind();
}

void Server::stop() {
  if (impl_->http.is_running()) impl_->http.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
  if (impl_->bound_port >= 0) {
    save_metrics();
    impl_->bound_port = -1;
  }
}

int Server::port() const { return impl_->bound_port; }

void Server::save_metrics() const { impl_->metrics.save(impl_->metrics_path()); }

}  // namespace sessionscope
