#pragma once

#include <stdexcept>
#include <string>

namespace satqr {

// Rejected argument or parameter record. Maps to CLI exit code 1.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// An analytic outcome that a caller asked to treat as a hard check
// (no key, no crossover). Maps to CLI exit code 2.
class NoResult : public std::runtime_error {
 public:
  explicit NoResult(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace satqr
