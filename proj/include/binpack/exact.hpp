#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "binpack/core.hpp"

namespace binpack {

struct ExactConfig {
  int max_items = 24;                    // cap for the branch-and-bound path
  int max_distinct = 12;                 // cap for the configuration search path
  std::int64_t node_budget = 4'000'000;  // search-node limit, shared by both paths
};

// Thrown when the oracle cannot prove an optimum: callers fall back to
// lower_bound and must flag the result as a bound, not an optimum.
class ExactError : public std::runtime_error {
 public:
  enum class Kind { TooLarge, BudgetExhausted };
  ExactError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// max(ceil(total weight), number of items larger than half a bin).
std::int64_t lower_bound(const Instance& instance);

struct ExactResult {
  std::int64_t bins = 0;
  Packing witness;
};

// Provably minimal bin count with a witness packing. Instances with few
// distinct sizes go through a search over bin configurations (counts per
// distinct size), which handles arbitrarily large n; otherwise a
// bin-completion branch-and-bound handles n <= max_items. Fails loudly
// rather than returning an unproven bound.
ExactResult opt_exact(const Instance& instance, const ExactConfig& config = {});

}  // namespace binpack
