#pragma once

#include <stdexcept>
#include <string>

namespace swimlab {

enum class ErrorKind {
  validation,   // bad input: out-of-range parameter, malformed record, unknown name
  convergence,  // iterative solver failed to converge
  divergence,   // time integration produced non-finite state
  io,           // file could not be read or written
  internal,     // broken invariant inside the library
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(ErrorKind::convergence, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, long step)
      : Error(ErrorKind::divergence, what), step_(step) {}
  /// First time step whose state was not finite.
  long step() const noexcept { return step_; }

 private:
  long step_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace swimlab
