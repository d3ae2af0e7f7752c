#pragma once

#include <stdexcept>
#include <string>

namespace nmr {

enum class ErrorCode {
  InvalidArgument,    // bad parameter value (negative tau, level out of range, ...)
  DimensionMismatch,  // shapes disagree
  IllPosed,           // singular normal matrix with lambda = 0
  Io,                 // unreadable/unwritable file
  Format,             // malformed file contents
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DimensionMismatch: return "dimension-mismatch";
    case ErrorCode::IllPosed: return "ill-posed";
    case ErrorCode::Io: return "io";
    case ErrorCode::Format: return "format";
  }
  return "unknown";
}

}  // namespace nmr
