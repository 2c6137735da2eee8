#pragma once

#include <stdexcept>
#include <string>

namespace pml {

// Invalid argument / malformed input. CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Work estimate exceeds the configured budget. CLI maps this to exit code 3.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pml
