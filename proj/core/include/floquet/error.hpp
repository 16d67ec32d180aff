#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

/// Failure categories; the CLI maps each one to a distinct exit code.
enum class ErrorKind {
  kPrecondition,  ///< caller supplied arguments outside the operation's domain
  kResolution,    ///< grid, basis or time step too coarse for the request
  kInvariant,     ///< a verified property did not hold
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::kPrecondition, what) {}
};

class ResolutionError : public Error {
 public:
  explicit ResolutionError(const std::string& what)
      : Error(ErrorKind::kResolution, what) {}
};

class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what)
      : Error(ErrorKind::kInvariant, what) {}
};

}  // namespace floquet
