#pragma once

#include <cstdint>

#include "qll/errors.hpp"

namespace qll {

struct Budgets {
  std::uint64_t family_cap = std::uint64_t{1} << 20;
  std::uint64_t node_cap = 100'000'000;
  std::uint64_t subspace_cap = 1'000'000;
};

// Counts search nodes against a cap and throws BudgetExceeded past it.
class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t cap, const char* name = "search node")
      : cap_(cap), name_(name) {}

  void tick() {
    if (++count_ > cap_) throw BudgetExceeded(name_, cap_);
  }
  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t cap_;
  const char* name_;
  std::uint64_t count_ = 0;
};

}  // namespace qll
