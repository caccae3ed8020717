#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "sessionscope/coverage.hpp"
#include "sessionscope/error.hpp"
#include "sessionscope/heatmap.hpp"
#include "sessionscope/log_store.hpp"
#include "sessionscope/service.hpp"
#include "sessionscope/synth.hpp"

namespace sessionscope::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::atomic<bool> g_stop_requested{false};

extern "C" void on_stop_signal(int) { g_stop_requested.store(true); }

std::set<Category> parse_categories(const std::string& csv) {
  std::set<Category> out;
  std::stringstream in(csv);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) out.insert(parse_category(name));
  }
  return out;
}

LoadedSet batch_set(const std::vector<std::string>& paths) {
  LoadedSet set;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    set.sessions.push_back(read_session_file(paths[i]));
    set.colors.push_back(kSessionPalette[i % kSessionPalette.size()]);
    set.duration_max = std::max(set.duration_max, set.sessions.back().duration);
  }
  return set;
}

int cmd_synth(const std::string& scenario, std::uint64_t seed, int players, double duration,
              double hz, const std::vector<double>& extent, const std::string& out_dir,
              std::ostream& out) {
  ScenarioSpec spec;
  spec.scenario = parse_scenario(scenario);
  spec.seed = seed;
  spec.player_count = players;
  spec.duration = duration;
  spec.sample_hz = hz;
  if (!extent.empty()) spec.extent = {extent[0], extent[1], extent[2], extent[3]};
  const SessionLog log = synthesize_session(spec);
  fs::create_directories(out_dir);
  const fs::path path =
      fs::path(out_dir) / (std::string(to_string(spec.scenario)) + "-" + std::to_string(seed) +
                           std::string(kLogExtension));
  write_session_file(log, path);
  out << path.string() << '\n';
  return kExitOk;
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  SessionLog log;
  try {
    log = read_session_file(path);
  } catch (const Error& e) {
    err << path << ": " << e.what() << '\n';
    return kExitFailure;
  }
  const auto violations = validate_session(log);
  for (const auto& v : violations) {
    err << path << ": " << to_string(v.kind) << ": " << v.message << '\n';
  }
  if (!violations.empty()) return kExitFailure;
  out << path << ": ok\n";
  return kExitOk;
}

int cmd_info(const std::string& path, std::ostream& out, std::ostream& err) {
  SessionLog log;
  try {
    log = read_session_file(path);
  } catch (const Error& e) {
    err << path << ": " << e.what() << '\n';
    return kExitFailure;
  }
  out << "session   " << log.session_id << '\n'
      << "game      " << log.game_name << '\n'
      << "started   " << to_iso8601(log.started_at) << '\n'
      << "rate      " << log.sample_hz << " Hz\n"
      << "duration  " << log.duration << " s\n"
      << "objects   " << log.objects.size() << '\n';
  for (const auto& d : log.objects) {
    std::size_t n = 0;
    if (auto it = log.samples.find(d.id); it != log.samples.end()) n = it->second.size();
    if (auto it = log.hands.find(d.id); it != log.hands.end()) n = it->second.size();
    out << "  " << d.id << " (" << to_string(d.category) << ") " << n << " samples\n";
  }
  out << "statics   " << log.statics.size() << '\n'
      << "inputs    " << log.inputs.size() << '\n'
      << "audio     " << log.audio.size() << '\n';
  const auto violations = validate_session(log);
  out << "valid     " << (violations.empty() ? "yes" : "no") << '\n';
  return violations.empty() ? kExitOk : kExitFailure;
}

int cmd_heatmap(const std::vector<std::string>& logs, double cell, const std::string& png,
                const std::string& categories, bool log_scale, std::ostream& out) {
  const LoadedSet set = batch_set(logs);
  HeatmapOptions options;
  options.cell_size = cell;
  if (!categories.empty()) options.categories = parse_categories(categories);
  const DensityGrid grid = accumulate_density(set, FilterSet::all(), std::nullopt, options);
  const HeatmapFiles files = export_heatmap(grid, colorize(grid, log_scale), png);
  out << files.png.string() << '\n' << files.sidecar.string() << '\n';
  out << "cells " << grid.spec.cols << "x" << grid.spec.rows << ", samples " << grid.total()
      << ", max " << grid.max_count << '\n';
  return kExitOk;
}

int cmd_coverage(const std::string& path, double cell, double height, const std::string& camera,
                 const std::string& out_path, std::ostream& out) {
  const SessionLog log = read_session_file(path);
  LoadedSet set;
  set.sessions.push_back(log);
  set.colors.push_back(kSessionPalette[0]);
  HeatmapOptions area;
  area.categories = {Category::Player, Category::Camera, Category::Custom, Category::AudioSource};
  area.cell_size = cell;
  const GridSpec spec = derive_grid_spec(heatmap_positions(set, FilterSet::all(), area), cell);

  std::optional<CoverageGrid> total;
  for (const auto& [id, params] : log.camera_params) {
    if (!camera.empty() && id != camera) continue;
    auto it = log.samples.find(id);
    if (it == log.samples.end() || it->second.empty()) continue;
    CoverageGrid g = compute_coverage(it->second, params, spec, height);
    if (total) {
      merge_coverage(*total, g);
    } else {
      total = std::move(g);
    }
  }
  if (!total) throw Error(ErrorKind::EmptyData, "no camera streams in " + path);
  std::ofstream file(out_path, std::ios::trunc);
  file << coverage_report_json(*total) << '\n';
  if (!file) throw Error(ErrorKind::Io, "cannot write '" + out_path + "'");
  out << out_path << '\n' << "covered_fraction " << total->covered_fraction() << '\n';
  return kExitOk;
}

int cmd_serve(const std::string& dir, const std::string& host, int port, std::size_t limit,
              const std::string& www, std::ostream& out) {
  ServerOptions options;
  options.log_dir = dir;
  options.host = host;
  options.port = port;
  options.load_limit = limit;
  if (const char* env = std::getenv(std::string(kPortEnvVar).c_str()); env && *env) {
    try {
      options.port = std::stoi(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Argument, std::string(kPortEnvVar) + " is not a port number");
    }
  }
  if (!www.empty()) {
    options.static_dir = www;
  } else if (fs::is_directory(fs::path(dir) / "www")) {
    options.static_dir = fs::path(dir) / "www";
  }

  Server server(options);
  g_stop_requested = false;
  std::signal(SIGINT, on_stop_signal);
  std::signal(SIGTERM, on_stop_signal);
  const int bound = server.start();
  out << "serving " << dir << " on http://" << host << ":" << bound << std::endl;
  while (!g_stop_requested.load()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  out << "stopped; metrics written to " << (fs::path(dir) / kMetricsFileName).string() << std::endl;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"sessionscope: gameplay session recording, replay and analytics"};
  app.require_subcommand(1);

  std::string scenario = "arena";
  std::uint64_t seed = 0;
  int players = 1;
  double duration = 60.0;
  double hz = 30.0;
  std::vector<double> extent;
  std::string out_dir;
  auto* synth = app.add_subcommand("synth", "Synthesize a deterministic session log");
  synth->add_option("--scenario", scenario, "arena | patrol | fps-drill")
      ->check(CLI::IsMember({"arena", "patrol", "fps-drill"}));
  synth->add_option("--seed", seed, "PRNG seed");
  synth->add_option("--players", players, "Number of players")->check(CLI::PositiveNumber);
  synth->add_option("--duration", duration, "Seconds of play")->check(CLI::PositiveNumber);
  synth->add_option("--hz", hz, "Sampling rate")->check(CLI::PositiveNumber);
  synth->add_option("--extent", extent, "Level extent min_x,min_z,max_x,max_z")
      ->expected(4)
      ->delimiter(',');
  synth->add_option("--out", out_dir, "Output directory")->required();

  std::string log_path;
  auto* validate = app.add_subcommand("validate", "Parse and validate a session log");
  validate->add_option("LOG", log_path)->required();

  auto* info = app.add_subcommand("info", "Summarize a session log");
  info->add_option("LOG", log_path)->required();

  std::vector<std::string> logs;
  double cell = kDefaultCellSize;
  std::string png_out;
  std::string categories;
  bool log_scale = false;
  auto* heatmap = app.add_subcommand("heatmap", "Aggregate an X/Z density heatmap");
  heatmap->add_option("LOG", logs)->required();
  heatmap->add_option("--cell", cell, "Cell size in meters")->check(CLI::PositiveNumber);
  heatmap->add_option("--out", png_out, "Output PNG (sidecar JSON written next to it)")->required();
  heatmap->add_option("--categories", categories, "Comma-separated categories (default Player)");
  heatmap->add_flag("--log-scale", log_scale, "Logarithmic color normalization");

  double height = kDefaultProbeHeight;
  std::string camera;
  std::string json_out;
  auto* coverage = app.add_subcommand("coverage", "Camera frustum coverage report");
  coverage->add_option("LOG", log_path)->required();
  coverage->add_option("--cell", cell, "Cell size in meters")->check(CLI::PositiveNumber);
  coverage->add_option("--height", height, "Probe height in meters");
  coverage->add_option("--camera", camera, "Only this camera id (default: all cameras)");
  coverage->add_option("--out", json_out, "Output JSON report")->required();

  std::string serve_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t limit = kDefaultLoadLimit;
  std::string www;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API over a log directory");
  serve->add_option("--dir", serve_dir, "Log directory")->required()->check(CLI::ExistingDirectory);
  serve->add_option("--port", port, "TCP port (SESSIONSCOPE_PORT overrides)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--limit", limit, "Maximum sessions loaded at once")
      ->check(CLI::Range(std::size_t{1}, kSessionPalette.size()));
  serve->add_option("--www", www, "Static web UI directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*synth) return cmd_synth(scenario, seed, players, duration, hz, extent, out_dir, out);
    if (*validate) return cmd_validate(log_path, out, err);
    if (*info) return cmd_info(log_path, out, err);
    if (*heatmap) return cmd_heatmap(logs, cell, png_out, categories, log_scale, out);
    if (*coverage) return cmd_coverage(log_path, cell, height, camera, json_out, out);
    if (*serve) return cmd_serve(serve_dir, host, port, limit, www, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace sessionscope::cli
