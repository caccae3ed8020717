#include "sessionscope/wall_time.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

#include "sessionscope/error.hpp"

namespace sessionscope {

namespace {

using namespace std::chrono;

int read_int(std::string_view text, std::size_t pos, std::size_t width) {
  int value = 0;
  const char* first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + width, value);
  if (ec != std::errc{} || ptr != first + width) {
    throw Error(ErrorKind::Parse, "malformed timestamp '" + std::string(text) + "'");
  }
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) {
    throw Error(ErrorKind::Parse, "malformed timestamp '" + std::string(text) + "'");
  }
}

}  // namespace

WallTime WallTime::now() {
  return {duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count()};
}

std::string to_iso8601(WallTime t) {
  const sys_time<milliseconds> tp{milliseconds{t.ms_since_epoch}};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss hms{tp - day};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", int(ymd.year()),
                unsigned(ymd.month()), unsigned(ymd.day()), int(hms.hours().count()),
                int(hms.minutes().count()), int(hms.seconds().count()),
                int(hms.subseconds().count()));
  return buf;
}

WallTime parse_iso8601(std::string_view text) {
  if (text.size() < 20) {
    throw Error(ErrorKind::Parse, "malformed timestamp '" + std::string(text) + "'");
  }
  const int y = read_int(text, 0, 4);
  expect(text, 4, '-');
  const int mo = read_int(text, 5, 2);
  expect(text, 7, '-');
  const int d = read_int(text, 8, 2);
  expect(text, 10, 'T');
  const int h = read_int(text, 11, 2);
  expect(text, 13, ':');
  const int mi = read_int(text, 14, 2);
  expect(text, 16, ':');
  const int s = read_int(text, 17, 2);
  std::size_t pos = 19;
  int ms = 0;
  if (pos < text.size() && text[pos] == '.') {
    ms = read_int(text, pos + 1, 3);
    pos += 4;
  }
  expect(text, pos, 'Z');
  if (pos + 1 != text.size()) {
    throw Error(ErrorKind::Parse, "trailing characters in timestamp '" + std::string(text) + "'");
  }
  const year_month_day ymd{year{y}, month{unsigned(mo)}, day{unsigned(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) {
    throw Error(ErrorKind::Parse, "out-of-range timestamp '" + std::string(text) + "'");
  }
  const auto tp = sys_days{ymd} + hours{h} + minutes{mi} + seconds{s} + milliseconds{ms};
  return {tp.time_since_epoch().count()};
}

}  // namespace sessionscope
