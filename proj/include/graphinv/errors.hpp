#pragma once

#include <stdexcept>
#include <string>

namespace ginv {

/// Raised when a request exceeds a documented size budget. Never a silent truncation.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed text input (graph lines, matrices, certificates, polynomials).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ginv
