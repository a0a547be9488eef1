#pragma once

#include <stdexcept>
#include <string>

namespace ifs {

// Invalid input or configuration. CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An exact-enumeration request whose cost exceeds the allowed budget.
// CLI maps this to exit code 2.
struct BudgetError : std::runtime_error {
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Breach of an internal invariant (e.g. a chain state escaping [0,1] by more
// than 1e-12). CLI maps this to exit code 3.
struct InternalError : std::runtime_error {
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ifs
