#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coprimality {

enum class ErrorKind {
  kInvalidArgument,
  kTableTooSmall,
  kPreconditionViolation,
  kCapExceeded,
  kOverflow,
  kUnsolvable,
  kNonCoprimeModuli,
  kResourceLimit,
  kParse,
  kInternal,
};

// Stable machine-readable name used in structured error output.
std::string_view error_kind_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace coprimality
