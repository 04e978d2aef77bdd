#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fixdet {

enum class ErrorCode {
  invalid_input,
  guard_violation,
  not_isotropic,
  not_surjective,
  malformed,
  fit_mismatch,
  support_collision,
  degree_mismatch,
  vanishing_violated,
  ceiling_exceeded,
  invariant_violation,
};

std::string_view to_string(ErrorCode code);

// Process exit code the CLI maps an error to: 2 precondition, 3 resource
// ceiling, 4 invariant failure.
int exit_code_for(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace fixdet
