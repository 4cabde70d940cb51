#pragma once

#include <stdexcept>
#include <string>

namespace tcqsim {

/// Base class for all tcqsim errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A physical or configuration parameter violates its preconditions.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A numerical routine failed (singular matrix, no convergence, blow-up).
class NumericsError : public Error {
 public:
  using Error::Error;
};

/// A requested dressed-state label is missing or ambiguous.
class LabelError : public Error {
 public:
  using Error::Error;
};

/// Root-finding against a calibration target failed.
class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// Config file rejected; carries the 1-based line number (0 if global).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

}  // namespace tcqsim
