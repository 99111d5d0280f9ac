#pragma once

#include <stdexcept>
#include <string>

namespace bicov {

// Base class so callers can catch everything from this library at once.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (bad indices, odd dimension, label clash, ...).
struct domain_error : error {
  using error::error;
};

// A configured size/iteration guard was exceeded; the message names the bound.
struct resource_limit_error : error {
  using error::error;
};

// An object failed verification against its contract (invalid cover, uncut path,
// realization mismatch when one was required). Carries a witness description.
struct validation_error : error {
  explicit validation_error(const std::string& msg, std::string witness = {})
      : error(witness.empty() ? msg : msg + " [witness: " + witness + "]"),
        witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

// A proven inequality failed to hold. Firing indicates an implementation bug,
// never a property of the input; surface loudly.
struct theorem_violation : error {
  using error::error;
};

}  // namespace bicov
