#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hcm {

/// Raised when a caller breaks a documented precondition (an edge that is not
/// incoming to the target, a point outside the unit box, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Raised by the exhaustive oracle when an instance is too large to enumerate.
class WorkCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const char* message) {
  if (!condition) throw ContractViolation(message);
}

}  // namespace detail
}  // namespace hcm
