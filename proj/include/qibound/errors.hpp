#pragma once

#include <stdexcept>
#include <string>

namespace qibound {

// Error taxonomy mirrored by the CLI exit codes:
//   validation/domain/unsupported -> 2, accuracy/io -> 3, violation -> 4.
enum class ErrorKind {
  validation,
  domain,
  unsupported,
  accuracy,
  io,
  violation,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  int exit_code() const noexcept {
    switch (kind_) {
      case ErrorKind::validation:
      case ErrorKind::domain:
      case ErrorKind::unsupported:
        return 2;
      case ErrorKind::accuracy:
      case ErrorKind::io:
        return 3;
      case ErrorKind::violation:
        return 4;
    }
    return 1;
  }

 private:
  ErrorKind kind_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(ErrorKind::validation, msg) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(ErrorKind::domain, msg) {}
};

struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& msg) : Error(ErrorKind::unsupported, msg) {}
};

struct AccuracyError : Error {
  explicit AccuracyError(const std::string& msg) : Error(ErrorKind::accuracy, msg) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(ErrorKind::io, msg) {}
};

struct InequalityViolationError : Error {
  explicit InequalityViolationError(const std::string& msg) : Error(ErrorKind::violation, msg) {}
};

}  // namespace qibound
