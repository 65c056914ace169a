#pragma once

#include <stdexcept>
#include <string>

namespace andor {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

// Enumeration passed its configured cap.
class LimitError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Violated internal invariant; indicates a bug, not bad input.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace andor
