#pragma once

#include <stdexcept>
#include <string>

namespace rcf {

enum class ErrorCode {
  InvalidParameter = 1,
  CapInsufficient = 2,
  EmptyHistogram = 3,
  Io = 4,
  Parse = 5,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void invalid_parameter(const std::string& message) {
  throw Error(ErrorCode::InvalidParameter, message);
}

}  // namespace rcf
