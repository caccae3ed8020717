#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "sessionscope/replay.hpp"

namespace sessionscope {

inline constexpr std::string_view kNotesFileName = "annotations.notes.jsonl";
inline constexpr std::string_view kMetricsFileName = "metrics.json";
inline constexpr std::string_view kPortEnvVar = "SESSIONSCOPE_PORT";

struct ServerOptions {
  std::filesystem::path log_dir;
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::size_t load_limit = kDefaultLoadLimit;
  std::optional<std::filesystem::path> static_dir;  // web UI assets served at /
  ResolveOptions resolve;
};

/// HTTP/JSON front end over one replay. All state changes go through a
/// single mutex; the transport clock advances by elapsed wall time (from
/// `clock`, seconds) whenever a request observes it.
class Server {
 public:
  using Clock = std::function<double()>;

  /// Throws Error(Io) when the log directory does not exist.
  explicit Server(ServerOptions options, Clock clock = {});
  ~Server();

  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds and serves on a background thread; returns the bound port.
  int start();
  /// Binds and serves on the calling thread until stop().
  void run();
  /// Stops serving and writes metrics.json into the log directory.
  void stop();

  int port() const;
  void save_metrics() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sessionscope
