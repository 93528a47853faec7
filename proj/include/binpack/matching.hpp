#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "binpack/core.hpp"

namespace binpack {

enum class PointSign { Plus, Minus };

// A point of the upright matching problem: a plus at (t1, y1) may be matched
// with a minus at (t2, y2) iff t1 <= t2 and y1 >= y2 (the plus arrives no
// later and sits no lower). Times are unique within a point set.
struct SignedPoint {
  std::int64_t time = 0;
  Units level = 0;
  PointSign sign = PointSign::Plus;
};

struct MatchingResult {
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (plus time, minus time)
  std::int64_t unmatched = 0;                                // U(P), both signs

  std::int64_t size() const { return static_cast<std::int64_t>(pairs.size()); }
};

// Best-fit sweep: walk the points in time order; a plus opens with
// capacity equal to its level; a minus takes the open plus with the smallest
// capacity >= its level (ties to the earliest arrival) or stays unmatched.
// The resulting matching is maximum.
MatchingResult upright_match_greedy(std::vector<SignedPoint> points);

// Maximum matching on the explicit edge set via augmenting paths; the
// independent check for the greedy sweep. Requires |P| <= 60.
std::int64_t upright_match_oracle(const std::vector<SignedPoint>& points);

// Best-Fit, except that a bin is closed permanently as soon as it receives
// an item of size <= 1/2 (an item of size <= 1/2 that opens a bin closes it
// immediately). Dominates plain Best-Fit.
class ModifiedBestFitPacker {
 public:
  void accept(const Item& item);
  Packing finish() const { return ledger_.to_packing(); }
  const std::vector<int>& trace() const { return ledger_.trace(); }

 private:
  BinLedger ledger_;
  std::set<std::pair<Units, int>> open_;  // (load, -serial), closed bins removed
};

Packing modified_best_fit(const Instance& instance);

// The reduction of MBF to upright matching for instances with all sizes
// > 1/3: item i becomes minus(time i, level x_i) if x_i <= 1/2, else
// plus(time i, level 1 - x_i). MBF bin count = #plus + #unmatched minus.
std::vector<SignedPoint> mbf_as_matching(const Instance& instance);

std::int64_t count_plus(const std::vector<SignedPoint>& points);
std::int64_t count_unmatched_minus(const std::vector<SignedPoint>& points,
                                   const MatchingResult& result);

}  // namespace binpack
