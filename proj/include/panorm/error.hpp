#pragma once

#include <stdexcept>
#include <string>

namespace panorm {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a group is rejected by the PA classifier; `reason()` names the
/// failed criterion.
class NotPAError : public Error {
 public:
  explicit NotPAError(std::string reason)
      : Error("not PA: " + reason), reason_(std::move(reason)) {}

  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

}  // namespace panorm
