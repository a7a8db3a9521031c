#pragma once

#include <stdexcept>
#include <string>

namespace bnpg {

/// An exhaustive routine was asked to run beyond its configured size cap.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(const std::string& what, int size, int limit)
      : std::runtime_error(what + ": size " + std::to_string(size) + " exceeds limit " + std::to_string(limit)),
        size_(size),
        limit_(limit) {}

  int size() const { return size_; }
  int limit() const { return limit_; }

 private:
  int size_;
  int limit_;
};

/// Malformed instance or solution text. `location` is either "line L, column C"
/// for syntax errors or a JSON pointer such as "/edges/3" for field errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : std::runtime_error(location + ": " + message), location_(location) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// An instance violates a precondition of the requested solver.
class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bnpg
