#include "sessionscope/error.hpp"

namespace sessionscope {

namespace {

std::string decorate(ErrorKind kind, const std::string& message, std::size_t line) {
  std::string out(to_string(kind));
  out += " error";
  if (line > 0) {
    out += " at line ";
    out += std::to_string(line);
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidOrientation: return "invalid-orientation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Reference: return "reference";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Io: return "io";
    case ErrorKind::Registration: return "registration";
    case ErrorKind::MissingParams: return "missing-params";
    case ErrorKind::JointCount: return "joint-count";
    case ErrorKind::State: return "state";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Argument: return "argument";
    case ErrorKind::EmptyData: return "empty-data";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(decorate(kind, message, line)), kind_(kind), line_(line) {}

}  // namespace sessionscope
