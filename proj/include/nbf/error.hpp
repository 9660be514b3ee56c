#pragma once

#include <stdexcept>
#include <string>

namespace nbf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for problems that can be pinned to a source line.
class LineError : public Error {
 public:
  LineError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

class LexError : public LineError {
 public:
  using LineError::LineError;
};

class ExtractError : public LineError {
 public:
  using LineError::LineError;
};

// Malformed or unreadable input file; names the file and (1-based) line.
class InputError : public Error {
 public:
  InputError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what) {}
  InputError(const std::string& file, const std::string& what)
      : Error(file + ": " + what) {}
};

}  // namespace nbf
