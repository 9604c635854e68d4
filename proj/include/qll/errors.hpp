#pragma once

#include <stdexcept>
#include <string>

namespace qll {

// Malformed or inconsistent input data (JSON, families, forms, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation was not met by the caller.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The operation is not available for this representation.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search or enumeration ran past its configured budget. This is an
// inconclusive outcome, never a negative answer.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string what_budget, unsigned long long limit)
      : std::runtime_error(what_budget + " budget exceeded (limit " +
                           std::to_string(limit) + ")"),
        budget_(std::move(what_budget)),
        limit_(limit) {}

  const std::string& budget() const noexcept { return budget_; }
  unsigned long long limit() const noexcept { return limit_; }

 private:
  std::string budget_;
  unsigned long long limit_;
};

}  // namespace qll
