#pragma once

#include <stdexcept>
#include <string>

namespace pddl3c {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax or input-validation error, with a source position when known.
/// Covers malformed text, undeclared objects/predicates, non-closed
/// constraint formulas and reserved-name collisions.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line = -1, int col = -1)
      : Error(format(msg, line, col)), line_(line), col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  static std::string format(const std::string& msg, int line, int col) {
    if (line < 0) return msg;
    return std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
  }

  int line_;
  int col_;
};

/// The input uses a PDDL construct outside the supported fragment.
class UnsupportedFeatureError : public Error {
 public:
  explicit UnsupportedFeatureError(const std::string& construct, int line = -1,
                                   int col = -1)
      : Error(format(construct, line, col)), construct_(construct) {}

  const std::string& construct() const { return construct_; }

 private:
  static std::string format(const std::string& construct, int line, int col) {
    std::string msg = "unsupported feature: " + construct;
    if (line >= 0)
      msg += " (at " + std::to_string(line) + ":" + std::to_string(col) + ")";
    return msg;
  }

  std::string construct_;
};

/// A configurable limit (e.g. the ground-action cap) was exceeded.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

/// An action was applied in a state that does not satisfy its precondition.
class InapplicableActionError : public Error {
 public:
  InapplicableActionError(const std::string& action, int index)
      : Error("action " + action + " inapplicable at step " +
              std::to_string(index)),
        index_(index) {}

  int index() const { return index_; }

 private:
  int index_;
};

}  // namespace pddl3c
