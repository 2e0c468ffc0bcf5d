#pragma once

#include <stdexcept>
#include <string>

namespace memcell {

/// Failure categories. Each maps one-to-one onto a C API status code.
enum class ErrorKind {
  Domain,        // argument outside the mathematical domain of a law
  Range,         // user-facing value outside its allowed range
  Parameter,     // inconsistent device parameters
  Model,         // no physical operating point exists
  Singularity,   // derivative law blew up (e.g. memristance <= 0)
  Protocol,      // the cell entered a mode it must never enter
  Precondition,  // operation called with inputs it does not accept
  Input,         // malformed analysis input (trace too short, ...)
  Config,        // scenario configuration rejected
  Io,            // filesystem failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace memcell
