#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sessionscope/model.hpp"

namespace sessionscope {

inline constexpr std::string_view kLogExtension = ".gamr.jsonl";
inline constexpr int kLogFormatVersion = 1;

struct HeaderInfo {
  int version = kLogFormatVersion;
  std::string session_id;
  std::string game_name;
  WallTime started_at;
  double sample_hz = 0.0;

  friend bool operator==(const HeaderInfo&, const HeaderInfo&) = default;
};

struct ParseStats {
  std::size_t lines = 0;
  std::size_t records = 0;
  std::size_t unknown_fields = 0;
};

/// Writes `log` as line-delimited JSON in canonical form. The log must pass
/// validate_session; throws Error(Validation) otherwise and Error(Io) when
/// the sink fails. Returns the number of bytes written.
std::size_t write_session(const SessionLog& log, std::ostream& out);
std::string write_session_string(const SessionLog& log);
void write_session_file(const SessionLog& log, const std::filesystem::path& path);

/// Parses one session. Fields may appear in any order and unknown fields are
/// skipped (counted in `stats`). Errors carry the 1-based line number:
/// Parse for malformed lines, Structure for header/end misplacement,
/// Reference for records naming unregistered objects.
SessionLog parse_session(std::istream& in, ParseStats* stats = nullptr);
SessionLog parse_session_string(std::string_view text, ParseStats* stats = nullptr);
SessionLog read_session_file(const std::filesystem::path& path, ParseStats* stats = nullptr);

enum class ViolationKind {
  InvalidValue,
  DuplicateId,
  DanglingReference,
  Monotonicity,
  NonUnitQuaternion,
  JointCount,
  MissingCameraParams,
  DurationBound,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string object_id;  // empty when the violation is not tied to an object
  std::string message;
};

/// Empty result means the log is valid.
std::vector<Violation> validate_session(const SessionLog& log);

struct DiscoveredLog {
  std::filesystem::path path;
  std::optional<HeaderInfo> header;
  std::string error;  // set iff header is empty
  std::size_t bytes_read = 0;
};

/// Lists `*.gamr.jsonl` files in `directory` (non-recursive), sorted by
/// filename. Only the first line of each file is read. Throws Error(Io) if
/// the directory cannot be listed.
std::vector<DiscoveredLog> discover_logs(const std::filesystem::path& directory);

}  // namespace sessionscope
