#pragma once

#include <stdexcept>
#include <string>

namespace qmot {

enum class ErrorCode {
  InvalidInput = 2,
  Resource = 3,
  Internal = 4,
};

/// Exception type thrown by every qmot routine. The code maps one-to-one onto
/// the status values of the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidInput, what);
}

[[noreturn]] inline void internal_error(const std::string& what) {
  throw Error(ErrorCode::Internal, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) invalid(what);
}

inline void ensure(bool cond, const std::string& what) {
  if (!cond) internal_error(what);
}

}  // namespace qmot
