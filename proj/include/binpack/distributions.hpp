#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "binpack/core.hpp"

namespace binpack {

// --- seeded generator --------------------------------------------------------
//
// The generator is fixed and implemented here (not a platform default) so
// that a seed reproduces the same byte-identical streams everywhere:
// xoshiro256** with splitmix64 state expansion.

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Unbiased integer in [0, bound) via rejection sampling; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform double in [0,1) with 53 random bits.
  double next_unit();

 private:
  std::uint64_t s_[4];
};

// Per-trial stream seed; distinct trials give distinct, independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial);

// --- distribution specs ------------------------------------------------------

struct ContinuousUniform {
  double a = 0.0;
  double b = 1.0;  // 0 <= a < b <= 1
};

struct DiscreteUniform {
  std::int64_t j = 1;  // sizes uniform over {1/k, ..., j/k}, 1 <= j <= k
  std::int64_t k = 1;
};

struct FiniteDiscrete {
  std::vector<std::pair<Size, double>> atoms;  // probabilities sum to 1
};

struct Empirical {
  std::vector<Units> sizes;  // sampled uniformly with replacement
  std::string path;          // provenance only
};

using DistributionSpec = std::variant<ContinuousUniform, DiscreteUniform, FiniteDiscrete, Empirical>;

// JSON spec: {"kind":"uniform","a":..,"b":..} | {"kind":"discrete_uniform","j":..,"k":..}
//          | {"kind":"finite","atoms":[[size,prob],...]} | {"kind":"file","path":..}
DistributionSpec distribution_from_json(std::string_view text);
DistributionSpec load_distribution(const std::string& path);

// Validates invariants (ranges, probability mass); throws std::invalid_argument.
void validate(const DistributionSpec& spec);

// n i.i.d. draws. Continuous draws are quantized to the 1e-9 grid, rounded
// half-up and clamped to at least one unit so the support stays in (0,1].
Instance sample_instance(const DistributionSpec& spec, std::int64_t n, std::uint64_t seed);

// Fisher-Yates shuffle of arrival order; the size multiset (and the item
// identities) are preserved.
Instance random_permutation(const Instance& instance, std::uint64_t seed);

}  // namespace binpack
