#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclineq {

enum class ErrorCode {
  NotABijection,
  BadDimension,
  IndexOutOfRange,
  NotAdmissible,
  IrrationalExponent,
  MatchingFailed,
  NotRefutable,
  OutOfDomain,
  NonPositiveInput,
  DimensionMismatch,
  BudgetExceeded,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports about its mathematical inputs. The CLI
// maps these to exit code 1; anything else escaping is a usage or I/O error.
class DomainError : public std::runtime_error {
 public:
  DomainError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cyclineq
