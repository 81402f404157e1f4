#pragma once

#include <stdexcept>
#include <string>

namespace zsl {

// Coarse failure categories; the C API maps these 1:1 onto status codes and
// the CLI maps them onto exit codes.
enum class ErrorCode {
    invalid_argument,
    dimension_mismatch,
    parse,
    io,
    format,
    numeric,
    internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace zsl
