#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace latsum {

/// Raised when an input violates a documented precondition of a domain
/// operation. `kind` is a short stable identifier (e.g. "dimension_mismatch")
/// that the CLI copies into its structured error output.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

}  // namespace latsum
