#pragma once

#include <stdexcept>
#include <string>

namespace dkit {

// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when an operation needs a finite ring but got an infinite one.
struct not_finite_error : error {
  using error::error;
};

// Raised when an exhaustive scan would exceed the configured budget.
struct budget_error : error {
  using error::error;
};

// Raised by the text-format parsers.
struct parse_error : error {
  using error::error;
};

}  // namespace dkit
