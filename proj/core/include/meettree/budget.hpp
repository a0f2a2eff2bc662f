#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace meettree {

/// Thrown when a bounded search exceeds its node budget.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(std::uint64_t limit)
      : std::runtime_error("search node budget exceeded (" + std::to_string(limit) + " nodes)"),
        limit(limit) {}
  std::uint64_t limit;
};

// Node budget shared by the exhaustive searches. The default (1e7 nodes) can
// be overridden with the MEETTREE_BUDGET environment variable.
class Budget {
 public:
  static constexpr std::uint64_t kDefaultLimit = 10'000'000;

  Budget() : limit_(env_limit()) {}
  explicit Budget(std::uint64_t limit) : limit_(limit) {}

  void charge(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > limit_) throw BudgetExceeded(limit_);
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

  static std::uint64_t env_limit() {
    if (const char* s = std::getenv("MEETTREE_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end && *end == '\0' && v > 0) return v;
    }
    return kDefaultLimit;
  }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t limit_;
};

}  // namespace meettree
