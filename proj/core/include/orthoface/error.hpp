#pragma once

#include <stdexcept>
#include <string>

namespace orthoface {

enum class ErrorKind {
  InvalidInput,
  Io,
  Config,
  LocalizationFailure,
  ExtractionFailure,
  DegenerateHull,
  DegenerateInput,
  IllConditioned,
  Assembly,
  Stage,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every exception thrown by the library. Derived types carry the
/// diagnostic payload of the failure they describe.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& message)
      : Error(ErrorKind::InvalidInput, message) {}
};

class IoError : public Error {
 public:
  IoError(std::string path, const std::string& message)
      : Error(ErrorKind::Io, path + ": " + message), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorKind::Config, message) {}
};

class IllConditionedError : public Error {
 public:
  explicit IllConditionedError(const std::string& message)
      : Error(ErrorKind::IllConditioned, message) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(const std::string& message)
      : Error(ErrorKind::DegenerateInput, message) {}
};

}  // namespace orthoface
