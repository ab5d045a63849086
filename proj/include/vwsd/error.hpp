#pragma once

#include <stdexcept>
#include <string>

namespace vwsd {

enum class ErrorKind {
  Config,       // bad configuration value or flag combination
  Validation,   // input violates a documented precondition
  Unsupported,  // combination the system refuses by design
  Parse,        // malformed file or response content
  Integrity,    // inconsistency across files, records, or counts
  Shape,        // vector dimension mismatch
  Degenerate,   // mathematically undefined input (zero vector, zero variance)
  Build,        // dataset builder cannot satisfy its contract
  Eval,         // metric precondition failure
  Provider,     // embedding/generation/translation backend failure
  Unavailable,  // required service not configured
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

  // Process exit code contract: 2 config, 3 data, 4 provider.
  int exit_code() const;

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace vwsd
