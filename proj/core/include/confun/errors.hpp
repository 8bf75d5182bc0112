#pragma once

#include <stdexcept>
#include <string>

namespace confun {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file or option value.
struct ParseError : Error {
  ParseError(const std::string& msg, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line(line) {}
  int line = 0;
};

// A vertex identification would collapse a simplex; the caller has to
// subdivide before gluing.
struct DegenerateGlueError : Error {
  using Error::Error;
};

// A generated object failed its own consistency check.
struct VerificationError : Error {
  using Error::Error;
};

}  // namespace confun
