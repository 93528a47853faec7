#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binpack/core.hpp"
#include "binpack/distributions.hpp"
#include "binpack/exact.hpp"
#include "binpack/heuristics.hpp"
#include "binpack/iid_meta.hpp"

namespace binpack {

// A packing algorithm under measurement: one of the classical heuristics,
// Modified Best-Fit, or the doubling meta-algorithm.
struct AlgoSpec {
  enum class Kind { Heuristic, MBF, Meta };
  Kind kind = Kind::Heuristic;
  OfflineAlgorithmId heuristic;
  MetaConfig meta;

  // "nf" | "ff" | "bf" | "nfd" | "ffd" | "bfd" | "harmonic[:k]" | "mbf" | "meta"
  static AlgoSpec parse(std::string_view name);
  std::string name() const;
};

Packing run_algo(const AlgoSpec& algo, const Instance& instance);

// Ratio denominator: exact optimum when one of the exact paths applies,
// otherwise the weight/large-item lower bound. Ratios against a lower bound
// are upper bounds on the true ratio.
struct Denominator {
  std::int64_t bins = 0;
  bool exact = false;
  std::optional<Packing> witness;  // present when exact
};

Denominator compute_denominator(const Instance& instance, const ExactConfig& config);

struct TrialStats {
  std::vector<std::int64_t> algo_bins;
  std::vector<std::int64_t> denom_bins;
  std::vector<char> denom_exact;
  std::vector<std::int64_t> ones, twos, threes;  // k-bin census of the algorithm's packing
  std::vector<std::int64_t> triplets;            // S-triplet count, 3-partition instances only
  std::vector<double> mu;                        // 2-bin fraction of the exact witness

  int trials() const { return static_cast<int>(algo_bins.size()); }
  double ratio_of_means() const;  // sum(algo) / sum(denom), the ECR/ARR estimator
  double mean_ratio() const;
  double ratio_std() const;
  bool all_exact() const;
};

// Per-trial fresh i.i.d. instance from the spec; trial t uses the derived
// stream seed derive_seed(seed, t).
TrialStats estimate_ecr(const DistributionSpec& spec, const AlgoSpec& algo, std::int64_t n,
                        int trials, std::uint64_t seed, const ExactConfig& exact = {});

// Per-trial fresh permutation of the same instance; the denominator is
// computed once (the optimum is permutation-invariant).
TrialStats estimate_arr(const Instance& instance, const AlgoSpec& algo, int trials,
                        std::uint64_t seed, const ExactConfig& exact = {});

// trial,algo_bins,denom_bins,denom_kind,ratio,x3,triplets,mu
void write_csv(std::ostream& out, const TrialStats& stats);

// --- 3-partition structure (sizes in (1/4,1/2]) ------------------------------

inline bool is_three_partition_size(Units u) { return 4 * u > kCapacity && 2 * u <= kCapacity; }
inline bool is_small_3p(Units u) { return 4 * u > kCapacity && 3 * u <= kCapacity; }   // (1/4,1/3]
inline bool is_medium_3p(Units u) { return 3 * u > kCapacity && 2 * u <= kCapacity; }  // (1/3,1/2]

// Maximum number of mutually disjoint runs of three consecutive small items,
// by a left-to-right greedy scan (optimal for disjoint fixed-length runs).
// Requires every size in (1/4,1/2].
std::int64_t count_s_triplets(const Instance& instance);

// The greedy triplets themselves, as item-id triples.
std::vector<std::array<int, 3>> s_triplet_ids(const Instance& instance);

// census[k] = number of bins holding exactly k items; census[0] == 0.
std::vector<std::int64_t> k_bin_census(const Packing& packing);

// Fraction of 2-bins; meant for an exact-optimal witness packing.
double mu_fraction(const Packing& opt_packing);

struct TripletCheckResult {
  bool ok = true;
  std::string counterexample;
};

// Runs Best-Fit on a seeded permutation and checks, for every disjoint
// S-triplet of the permuted order, that at least one member lands in a 3-bin
// or an SS-bin; also checks 3*X3 >= X_sigma - 3.
TripletCheckResult triplet_claim_check(const Instance& instance, std::uint64_t seed);

struct TripletExpectation {
  double measured_mean = 0;
  double std_error = 0;
  double exact_form = 0;  // floor(m/3) * m(m-1) / (n(n-1))
  int trials = 0;
};

// Labeled instance of m small and n-m medium items, permuted `trials` times.
TripletExpectation triplet_expectation_check(std::int64_t n, std::int64_t m, int trials,
                                             std::uint64_t seed);

// min{3/2 - mu/2, 3/2 - (1-mu)^3/162}: the two-sided Best-Fit bound.
double three_partition_bound(double mu);

// Root of 81*mu = (1-mu)^3 by bisection on [0, 0.05] to 1e-12; the bound is
// worst there (~1.494045 at mu ~ 0.01191).
double three_partition_worst_mu();

}  // namespace binpack
