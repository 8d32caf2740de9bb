#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qexp {

enum class ErrorCode {
  InvalidArgument,
  DigitOverflow,
  DigitUnderflow,
  NotFundamental,
  NotQuasiGreedy,
  NotAdmissible,
  PrecisionExhausted,
  NotInXa,
  AmbiguousStart,
  BadStart,
  NotInLanguage,
  NoConnection,
  InternalInvariant,
};

std::string_view to_string(ErrorCode code);

// Every failure in the library is reported through this type; `code()` lets
// callers (the CLI in particular) distinguish precision failures from domain
// errors without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qexp
