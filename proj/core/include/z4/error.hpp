#pragma once

#include <stdexcept>

namespace z4 {

// Mismatched or out-of-range dimensions / indices.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input outside an operation's domain (bad coefficient, unsupported size,
// exceeded desk-scale budget).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Malformed matrix file. The message carries a line or byte offset.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace z4
