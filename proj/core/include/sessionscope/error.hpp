#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sessionscope {

enum class ErrorKind {
  InvalidOrientation,
  Parse,
  Structure,
  Reference,
  Validation,
  Io,
  Registration,
  MissingParams,
  JointCount,
  State,
  Capacity,
  Argument,
  EmptyData,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `line()` is the 1-based source line
/// for errors that originate in a parsed file, 0 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::size_t line_;
};

}  // namespace sessionscope
