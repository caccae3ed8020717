#pragma once

// Internal helpers around nlohmann::json shared by the serializers.

#include <json.hpp>

#include <string>
#include <string_view>

#include "sessionscope/error.hpp"
#include "sessionscope/math.hpp"

namespace sessionscope::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json_array(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }
inline ordered_json to_json_array(const Quat& q) {
  return ordered_json::array({q.x, q.y, q.z, q.w});
}

/// Field access that reports failures as Error(Parse) carrying `line`.
class FieldReader {
 public:
  FieldReader(const json& object, std::size_t line) : obj_(object), line_(line) {}

  bool has(std::string_view key) const { return obj_.contains(key); }

  const json& at(std::string_view key) const {
    auto it = obj_.find(key);
    if (it == obj_.end()) fail("missing field '" + std::string(key) + "'");
    return *it;
  }

  double number(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number()) fail("field '" + std::string(key) + "' must be a number");
    return v.get<double>();
  }

  std::uint64_t unsigned_integer(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_number_unsigned()) {
      fail("field '" + std::string(key) + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }

  std::string string(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_string()) fail("field '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
  }

  bool boolean(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_boolean()) fail("field '" + std::string(key) + "' must be a boolean");
    return v.get<bool>();
  }

  Vec3 vec3(std::string_view key) const { return vec3_of(at(key), key); }

  Vec3 vec3_of(const json& v, std::string_view what) const {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number()) {
      fail("field '" + std::string(what) + "' must be [x,y,z]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
  }

  Quat quat(std::string_view key) const {
    const json& v = at(key);
    if (!v.is_array() || v.size() != 4) fail("field '" + std::string(key) + "' must be [x,y,z,w]");
    for (const auto& c : v) {
      if (!c.is_number()) fail("field '" + std::string(key) + "' must be [x,y,z,w]");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorKind::Parse, message, line_);
  }

  std::size_t line() const { return line_; }

 private:
  const json& obj_;
  std::size_t line_;
};

}  // namespace sessionscope::detail
