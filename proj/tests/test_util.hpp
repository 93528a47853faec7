#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "binpack/core.hpp"
#include "binpack/distributions.hpp"

namespace binpack::testutil {

// Plain exhaustive optimum: every item goes into every open bin or a new
// one, no pruning beyond feasibility. Independent of the production oracle;
// usable up to n ~ 10.
inline std::int64_t exhaustive_opt(const Instance& instance) {
  const auto& items = instance.items();
  std::vector<Units> loads;
  std::int64_t best = instance.n() == 0 ? 0 : instance.n();

  auto dfs = [&](auto&& self, std::size_t idx) -> void {
    if (idx == items.size()) {
      best = std::min(best, static_cast<std::int64_t>(loads.size()));
      return;
    }
    const Units s = items[idx].size.units;
    const std::size_t open = loads.size();  // recursion grows and shrinks loads
    for (std::size_t b = 0; b < open; ++b) {
      if (loads[b] + s <= kCapacity) {
        loads[b] += s;
        self(self, idx + 1);
        loads[b] -= s;
      }
    }
    loads.push_back(s);
    self(self, idx + 1);
    loads.pop_back();
  };
  if (instance.n() > 0) dfs(dfs, 0);
  return best;
}

// Random instance with sizes uniform over [lo_units, hi_units].
inline Instance random_instance(Rng& rng, int n, Units lo, Units hi) {
  std::vector<Units> sizes;
  sizes.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sizes.push_back(lo + static_cast<Units>(rng.next_below(static_cast<std::uint64_t>(hi - lo + 1))));
  return Instance::from_units(sizes);
}

// A grab-bag of size regimes for fuzzing, keyed by a selector.
inline Instance mixed_instance(Rng& rng, int n, int flavor) {
  switch (flavor % 5) {
    case 0: return random_instance(rng, n, 1, kCapacity);                        // anything
    case 1: return random_instance(rng, n, kCapacity / 4 + 1, kCapacity / 2);    // 3-partition
    case 2: return random_instance(rng, n, 1, kCapacity / 10);                   // small items
    case 3: return random_instance(rng, n, kCapacity / 3 + 1, kCapacity);        // > 1/3
    default: {
      // two-atom discrete mix
      std::vector<Units> sizes;
      for (int i = 0; i < n; ++i)
        sizes.push_back(rng.next_below(2) ? 250'000'000 : 333'333'333);
      return Instance::from_units(sizes);
    }
  }
}

inline bool same_bins(const Packing& a, const Packing& b) {
  if (a.bins.size() != b.bins.size()) return false;
  for (std::size_t i = 0; i < a.bins.size(); ++i)
    if (a.bins[i].item_ids != b.bins[i].item_ids) return false;
  return true;
}

}  // namespace binpack::testutil
