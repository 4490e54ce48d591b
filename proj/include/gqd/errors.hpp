#ifndef GQD_ERRORS_HPP
#define GQD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gqd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// A matrix failed one of the density-matrix invariants.
class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Requested parameter family does not match the matrix layout.
class WrongShape : public Error {
 public:
  using Error::Error;
};

class WrongCase : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// arctan forms of the closed-form thermal state are undefined (D_x = 0).
class DegenerateAngles : public Error {
 public:
  using Error::Error;
};

class SpecError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gqd

#endif  // GQD_ERRORS_HPP
