#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosite {

// Values are part of the CLI contract: they double as process exit codes.
enum class ErrorCode : int {
  internal = 1,
  file_not_found = 2,
  parse = 3,
  config = 4,
  invalid_argument = 5,
  unknown_node = 6,
  consistency = 7,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed input text. `line()` is 1-based; 0 when the error is not tied
/// to a single line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCode::config, what) {}
};

class FileNotFoundError : public Error {
 public:
  explicit FileNotFoundError(const std::string& path)
      : Error(ErrorCode::file_not_found, "file not found: " + path) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::invalid_argument, what) {}
};

}  // namespace cosite
