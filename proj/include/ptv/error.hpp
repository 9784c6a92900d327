#pragma once

#include <stdexcept>
#include <string>

namespace ptv {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched system types or grid shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A composition constraint of diagram formation was violated.
class TypeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// An input failed a precondition of the requested construction
/// (non-CP map, non-leak, multi-block system where one block is required...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptv
