#pragma once

#include <stdexcept>
#include <string>

namespace kmt {

// Raised when an operation would exceed a configured full-read or
// enumeration limit.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a caller violates a documented precondition.
struct PreconditionViolated : std::runtime_error {
  explicit PreconditionViolated(const std::string& what)
      : std::runtime_error(what) {}
};

// Raised by instance generators whose construction has verifiable
// side conditions that cannot be met at the requested scale.
struct ConstructionFailed : std::runtime_error {
  explicit ConstructionFailed(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace kmt
