#pragma once

#include <stdexcept>
#include <string>

namespace colorbasis {

// Errors carry the process exit code the CLI reports for them.
class Error : public std::runtime_error {
 public:
  Error(int exit_code, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

// Invalid parameters, bad config documents, violated preconditions.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(2, what) {}
};

// Unreadable or unusable input data.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(3, what) {}
};

// A statistic with no defined value (e.g. gamma when every pair is tied).
class UndefinedError : public DataError {
 public:
  explicit UndefinedError(const std::string& what) : DataError(what) {}
};

// A stage asked for an upstream artifact that has not been produced.
class DependencyError : public DataError {
 public:
  explicit DependencyError(const std::string& what) : DataError(what) {}
};

}  // namespace colorbasis
