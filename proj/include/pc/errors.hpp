#pragma once

#include <stdexcept>
#include <string>

namespace pc {

// A mathematical precondition failed. `witness` optionally names the
// offending data (a tuple, a generator product, a matrix entry).
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what, std::string witness = {})
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Malformed input (shapes, parse failures, unknown names).
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A verification would need more tuples than the configured budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pc
