#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace sessionscope {

/// Wall-clock instant, UTC, millisecond resolution.
struct WallTime {
  std::int64_t ms_since_epoch = 0;

  friend auto operator<=>(const WallTime&, const WallTime&) = default;

  static WallTime now();
};

/// "YYYY-MM-DDTHH:MM:SS.mmmZ"
std::string to_iso8601(WallTime t);
/// Accepts the format produced by to_iso8601; fractional seconds optional.
/// Throws Error(Parse) on anything else.
WallTime parse_iso8601(std::string_view text);

}  // namespace sessionscope
