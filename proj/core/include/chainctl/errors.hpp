#pragma once

#include <stdexcept>
#include <string>

namespace chainctl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ill-formed object data: dimension mismatch or a violated type invariant.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A well-formed call with an argument outside the operation's domain
/// (control outside the control range, unknown box id, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A trajectory produced a non-finite state.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double escape_time)
      : Error(what), escape_time_(escape_time) {}

  double escape_time() const noexcept { return escape_time_; }

 private:
  double escape_time_;
};

/// Inverse chart requested at a point of the equator (a point at infinity).
class EquatorError : public Error {
 public:
  using Error::Error;
};

/// A covering would exceed the configured box budget or depth limit.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chainctl
