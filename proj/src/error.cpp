#include "vwsd/error.hpp"

namespace vwsd {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "config";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Degenerate: return "degenerate-input";
    case ErrorKind::Build: return "build";
    case ErrorKind::Eval: return "evaluation";
    case ErrorKind::Provider: return "provider";
    case ErrorKind::Unavailable: return "unavailable";
  }
  return "error";
}

int Error::exit_code() const {
  switch (kind_) {
    case ErrorKind::Config:
    case ErrorKind::Validation:
    case ErrorKind::Unsupported:
      return 2;
    case ErrorKind::Parse:
    case ErrorKind::Integrity:
    case ErrorKind::Shape:
    case ErrorKind::Degenerate:
    case ErrorKind::Build:
    case ErrorKind::Eval:
      return 3;
    case ErrorKind::Provider:
    case ErrorKind::Unavailable:
      return 4;
  }
  return 1;
}

}  // namespace vwsd
