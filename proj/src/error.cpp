#include "cosite/error.hpp"

namespace cosite {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::internal: return "internal error";
    case ErrorCode::file_not_found: return "file not found";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::config: return "invalid configuration";
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::unknown_node: return "unknown node";
    case ErrorCode::consistency: return "internal consistency error";
  }
  return "unknown error";
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::parse,
            line == 0 ? message
                      : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

}  // namespace cosite
