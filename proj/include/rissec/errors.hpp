#pragma once

#include <stdexcept>
#include <string>

namespace rissec {

// Rejected configuration or argument; CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested evaluation path does not exist for these inputs; exit code 3.
class UnsupportedPath : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Series or quadrature failed to meet its tolerance; exit code 4.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial, double bound)
      : std::runtime_error(what), partial_(partial), bound_(bound) {}
  double partial() const noexcept { return partial_; }
  double bound() const noexcept { return bound_; }

 private:
  double partial_;
  double bound_;
};

}  // namespace rissec
