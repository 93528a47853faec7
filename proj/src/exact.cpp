#include "binpack/exact.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "binpack/heuristics.hpp"

namespace binpack {

std::int64_t lower_bound(const Instance& instance) {
  Units weight = 0;
  std::int64_t big = 0;
  for (const Item& item : instance.items()) {
    weight += item.size.units;
    if (2 * item.size.units > kCapacity) ++big;
  }
  return std::max(ceil_div(weight, kCapacity), big);
}

namespace {

// --- bin-completion branch-and-bound (general sizes, n <= max_items) --------
//
// Bins are fixed one at a time. The current bin must contain the largest
// unpacked item, and only maximal completions are tried: any solution can be
// rearranged so that this bin is maximal, so the restriction is safe.
class BinCompletion {
 public:
  BinCompletion(const Instance& instance, const ExactConfig& config)
      : config_(config), budget_(config.node_budget) {
    for (const Item& item : instance.items()) items_.push_back(item);
    std::stable_sort(items_.begin(), items_.end(),
                     [](const Item& a, const Item& b) { return a.size.units > b.size.units; });
    used_.assign(items_.size(), 0);
    for (const Item& item : items_) {
      rem_weight_ += item.size.units;
      if (2 * item.size.units > kCapacity) ++rem_big_;
    }
  }

  ExactResult run() {
    Packing ffd = sorted_variant(OnlineRule::FF, Instance(items_));
    best_ = ffd.bin_count();
    for (const Bin& bin : ffd.bins) witness_.push_back(bin.item_ids);

    if (best_ > remaining_lb()) dfs();

    std::vector<Units> size_of;
    for (const Item& item : items_) {
      if (static_cast<std::size_t>(item.id) >= size_of.size())
        size_of.resize(static_cast<std::size_t>(item.id) + 1);
      size_of[static_cast<std::size_t>(item.id)] = item.size.units;
    }

    ExactResult result;
    result.bins = best_;
    result.witness.n_items = static_cast<int>(items_.size());
    for (auto& ids : witness_) {
      Bin bin;
      bin.item_ids = ids;
      for (int id : bin.item_ids) bin.load += size_of[static_cast<std::size_t>(id)];
      result.witness.bins.push_back(std::move(bin));
    }
    return result;
  }

 private:
  std::int64_t remaining_lb() const {
    return std::max(ceil_div(rem_weight_, kCapacity), rem_big_);
  }

  void spend() {
    if (--budget_ < 0)
      throw ExactError(ExactError::Kind::BudgetExhausted, "opt_exact: node budget exhausted");
  }

  void take(std::size_t pos) {
    used_[pos] = 1;
    rem_weight_ -= items_[pos].size.units;
    if (2 * items_[pos].size.units > kCapacity) --rem_big_;
  }

  void give_back(std::size_t pos) {
    used_[pos] = 0;
    rem_weight_ += items_[pos].size.units;
    if (2 * items_[pos].size.units > kCapacity) ++rem_big_;
  }

  void dfs() {
    spend();
    std::size_t first = 0;
    while (first < items_.size() && used_[first]) ++first;
    if (first == items_.size()) {
      if (static_cast<std::int64_t>(bins_.size()) < best_) {
        best_ = static_cast<std::int64_t>(bins_.size());
        witness_ = bins_;
      }
      return;
    }
    if (static_cast<std::int64_t>(bins_.size()) + std::max<std::int64_t>(remaining_lb(), 1) >=
        best_)
      return;

    const Units cap_left = kCapacity - items_[first].size.units;
    std::vector<std::size_t> cands;
    for (std::size_t i = first + 1; i < items_.size(); ++i)
      if (!used_[i] && items_[i].size.units <= cap_left) cands.push_back(i);

    take(first);
    std::vector<std::size_t> chosen;
    complete(first, cands, chosen, 0, 0, kCapacity + 1);
    give_back(first);
  }

  // Enumerates maximal subsets of `cands` (sizes descending) that fit next to
  // the seed item. `min_excluded` tracks the smallest size skipped while it
  // still fit; a leaf where that size fits is non-maximal and is dropped.
  void complete(std::size_t seed, const std::vector<std::size_t>& cands,
                std::vector<std::size_t>& chosen, std::size_t idx, Units load,
                Units min_excluded) {
    spend();
    const Units cap_left = kCapacity - items_[seed].size.units;
    if (idx == cands.size()) {
      if (load + min_excluded <= cap_left) return;  // a skipped item still fits
      std::vector<int> ids = {items_[seed].id};
      for (std::size_t pos : chosen) ids.push_back(items_[pos].id);
      bins_.push_back(std::move(ids));
      dfs();
      bins_.pop_back();
      return;
    }
    const Units s = items_[cands[idx]].size.units;
    if (load + s <= cap_left) {
      chosen.push_back(cands[idx]);
      take(cands[idx]);
      complete(seed, cands, chosen, idx + 1, load + s, min_excluded);
      give_back(cands[idx]);
      chosen.pop_back();
      // skip this size entirely: jumping over all equal sizes avoids
      // re-enumerating permutations of identical items
      std::size_t next = idx;
      while (next < cands.size() && items_[cands[next]].size.units == s) ++next;
      complete(seed, cands, chosen, next, load, std::min(min_excluded, s));
    } else {
      complete(seed, cands, chosen, idx + 1, load, min_excluded);
    }
  }

  ExactConfig config_;
  std::int64_t budget_;
  std::vector<Item> items_;  // sorted by size descending
  std::vector<char> used_;
  Units rem_weight_ = 0;
  std::int64_t rem_big_ = 0;
  std::int64_t best_ = 0;
  std::vector<std::vector<int>> bins_;
  std::vector<std::vector<int>> witness_;
};

// --- configuration search (few distinct sizes, any n) ------------------------
//
// A configuration is a maximal multiset of distinct sizes that fits in one
// bin. The search picks how many copies of each configuration to use;
// applying a copy packs min(config count, remaining demand) of each size, so
// end-of-demand bins degrade gracefully instead of needing partial configs.
class ConfigSearch {
 public:
  ConfigSearch(const Instance& instance, const ExactConfig& config)
      : config_(config), budget_(config.node_budget) {
    std::map<Units, std::vector<int>> groups;
    for (const Item& item : instance.items()) groups[item.size.units].push_back(item.id);
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
      sizes_.push_back(it->first);
      ids_.push_back(std::move(it->second));
      demand_.push_back(static_cast<std::int64_t>(ids_.back().size()));
    }
  }

  ExactResult run() {
    enumerate_configs({}, 0, 0);
    std::sort(configs_.begin(), configs_.end(),
              [](const Config& a, const Config& b) { return a.waste < b.waste; });

    Packing ffd = sorted_variant(OnlineRule::FF,
                                 Instance([&] {
                                   std::vector<Item> items;
                                   for (std::size_t i = 0; i < sizes_.size(); ++i)
                                     for (int id : ids_[i]) items.push_back({id, Size{sizes_[i]}});
                                   return items;
                                 }()));
    best_ = ffd.bin_count();
    root_lb_ = lb(demand_);

    if (best_ > root_lb_) {
      path_.clear();
      dfs(demand_, 0);
    } else {
      best_path_.clear();
      use_ffd_witness_ = true;
    }

    ExactResult result;
    result.bins = best_;
    if (use_ffd_witness_ || best_ == ffd.bin_count()) {
      result.witness = std::move(ffd);
    } else {
      result.witness = rebuild_witness();
    }
    return result;
  }

 private:
  std::int64_t lb(const std::vector<std::int64_t>& rem) const {
    Units weight = 0;
    std::int64_t big = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      weight += rem[i] * sizes_[i];
      if (2 * sizes_[i] > kCapacity) big += rem[i];
    }
    return std::max(ceil_div(weight, kCapacity), big);
  }

  void spend() {
    if (--budget_ < 0)
      throw ExactError(ExactError::Kind::BudgetExhausted, "opt_exact: node budget exhausted");
  }

  void enumerate_configs(std::vector<std::int64_t> counts, std::size_t idx, Units load) {
    spend();
    if (idx == sizes_.size()) {
      for (std::size_t i = 0; i < sizes_.size(); ++i)
        if (counts[i] < demand_[i] && load + sizes_[i] <= kCapacity) return;  // extendable
      Units waste = kCapacity - load;
      configs_.push_back({std::move(counts), waste});
      if (static_cast<std::int64_t>(configs_.size()) > config_.node_budget / 4)
        throw ExactError(ExactError::Kind::BudgetExhausted, "opt_exact: too many configurations");
      return;
    }
    std::int64_t most = std::min<std::int64_t>(demand_[idx], (kCapacity - load) / sizes_[idx]);
    counts.push_back(0);
    for (std::int64_t c = most; c >= 0; --c) {
      counts.back() = c;
      enumerate_configs(counts, idx + 1, load + c * sizes_[idx]);
    }
  }

  void dfs(const std::vector<std::int64_t>& rem, std::int64_t bins) {
    spend();
    if (best_ == root_lb_) return;  // proven optimal, unwind
    std::size_t f = 0;
    while (f < rem.size() && rem[f] == 0) ++f;
    if (f == rem.size()) {
      if (bins < best_) {
        best_ = bins;
        best_path_ = path_;
        use_ffd_witness_ = false;
      }
      return;
    }
    if (bins + lb(rem) >= best_) return;

    for (std::size_t ci = 0; ci < configs_.size(); ++ci) {
      const auto& counts = configs_[ci].counts;
      if (counts[f] == 0) continue;
      std::int64_t t_max = std::min(ceil_div(rem[f], counts[f]), best_ - bins - 1);
      for (std::int64_t t = t_max; t >= 1; --t) {
        std::vector<std::int64_t> next = rem;
        for (std::size_t i = 0; i < next.size(); ++i)
          next[i] -= std::min(t * counts[i], next[i]);
        path_.push_back({ci, t});
        dfs(next, bins + t);
        path_.pop_back();
        if (best_ == root_lb_) return;
      }
    }
  }

  Packing rebuild_witness() const {
    Packing packing;
    std::vector<std::int64_t> rem = demand_;
    std::vector<std::size_t> next_id(sizes_.size(), 0);
    for (const auto& [ci, t] : best_path_) {
      const auto& counts = configs_[ci].counts;
      for (std::int64_t copy = 0; copy < t; ++copy) {
        Bin bin;
        for (std::size_t i = 0; i < sizes_.size(); ++i) {
          std::int64_t take = std::min(counts[i], rem[i]);
          for (std::int64_t c = 0; c < take; ++c)
            bin.item_ids.push_back(ids_[i][next_id[i]++]);
          bin.load += take * sizes_[i];
          rem[i] -= take;
        }
        if (!bin.item_ids.empty()) packing.bins.push_back(std::move(bin));
      }
    }
    packing.n_items = 0;
    for (const auto& ids : ids_) packing.n_items += static_cast<int>(ids.size());
    return packing;
  }

  struct Config {
    std::vector<std::int64_t> counts;
    Units waste;
  };

  ExactConfig config_;
  std::int64_t budget_;
  std::vector<Units> sizes_;          // distinct sizes, descending
  std::vector<std::vector<int>> ids_; // item ids per distinct size
  std::vector<std::int64_t> demand_;
  std::vector<Config> configs_;
  std::int64_t best_ = 0;
  std::int64_t root_lb_ = 0;
  bool use_ffd_witness_ = true;
  std::vector<std::pair<std::size_t, std::int64_t>> path_, best_path_;
};

}  // namespace

ExactResult opt_exact(const Instance& instance, const ExactConfig& config) {
  if (instance.empty()) return {};

  std::vector<Units> sizes;
  for (const Item& item : instance.items()) sizes.push_back(item.size.units);
  std::sort(sizes.begin(), sizes.end());
  const auto distinct = std::unique(sizes.begin(), sizes.end()) - sizes.begin();

  ExactResult result;
  if (distinct <= config.max_distinct) {
    result = ConfigSearch(instance, config).run();
  } else if (instance.n() <= config.max_items) {
    result = BinCompletion(instance, config).run();
  } else {
    throw ExactError(ExactError::Kind::TooLarge,
                     "opt_exact: " + std::to_string(instance.n()) + " items with " +
                         std::to_string(distinct) + " distinct sizes exceeds the exact caps");
  }
  result.witness.n_items = instance.n();
  return result;
}

}  // namespace binpack
