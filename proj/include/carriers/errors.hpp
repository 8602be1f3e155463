#pragma once

#include <stdexcept>
#include <string>

namespace carriers {

/// Thrown when an enumeration or geometry routine would exceed its
/// configured resource budget. CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace carriers
