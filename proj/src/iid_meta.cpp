#include "binpack/iid_meta.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace binpack {

MetaConfig MetaConfig::from_epsilon(double eps, OfflineAlgorithmId offline) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("meta: epsilon must be in (0,1)");
  MetaConfig config;
  config.epsilon = eps;
  config.offline = offline;
  std::int64_t inv = 2;
  while (static_cast<double>(inv) <= 8.0 / eps) inv *= 2;  // delta < eps/8, strictly
  config.inv_delta = inv;
  config.validate();
  return config;
}

void MetaConfig::validate() const {
  if (inv_delta < 2 || (inv_delta & (inv_delta - 1)) != 0 || inv_delta > (1LL << 20))
    throw std::invalid_argument("meta: 1/delta must be a power of two in [2, 2^20]");
}

StagePlan plan_stages(std::int64_t n, const MetaConfig& config) {
  config.validate();
  const std::int64_t inv_sq = config.inv_delta * config.inv_delta;
  if (n < inv_sq)
    throw std::invalid_argument("meta: n < 1/delta^2, sampling stage would be empty");

  StagePlan plan;
  plan.n = n;
  std::int64_t m = 1;
  for (std::int64_t v = inv_sq; v > 1; v /= 2) ++m;  // m = log2(1/delta^2) + 1
  std::int64_t assigned = 0;
  plan.sizes.push_back(n / inv_sq);
  assigned += plan.sizes[0];
  for (std::int64_t j = 1; j + 1 < m; ++j) {
    auto size = static_cast<std::int64_t>((static_cast<__int128>(n) << (j - 1)) / inv_sq);
    plan.sizes.push_back(size);
    assigned += size;
  }
  plan.sizes.push_back(n - assigned);  // last stage absorbs the remainder
  return plan;
}

std::optional<ProxyState::Replacement> ProxyState::replace(Units real_size) {
  auto it = slots_.lower_bound({real_size, std::numeric_limits<int>::min(), 0});
  if (it == slots_.end()) return std::nullopt;
  Replacement r{std::get<1>(*it), std::get<0>(*it)};
  if (r.proxy_size < real_size)  // a real item may only stand in a slot at least its size
    throw std::logic_error("proxy replacement would overfill its bin");
  slots_.erase(it);
  return r;
}

namespace detail {

// Packs the real items of one stage against the lazily built proxy packings
// of its prefix chunks. Large items replace proxies; small items go through
// the slot set's Next-Fit cursor.
class StageRunner {
 public:
  StageRunner(const MetaConfig& config, std::int64_t chunk_count, std::vector<Item> prefix,
              BinLedger& ledger, SSlotSet& slots, MetaCounters& counters)
      : config_(config), prefix_(std::move(prefix)), ledger_(ledger), slots_(slots),
        counters_(counters) {
    chunk_count_ = std::min<std::int64_t>(chunk_count, static_cast<std::int64_t>(prefix_.size()));
    if (chunk_count_ < 1) chunk_count_ = 1;
    batch_ = static_cast<std::int64_t>(prefix_.size()) / chunk_count_;
    if (batch_ < 1) batch_ = 1;
  }

  void accept(const Item& item) {
    const std::int64_t wanted = std::min(seen_ / batch_, chunk_count_ - 1);
    if (!built_ || wanted != chunk_) {
      chunk_ = wanted;
      build_chunk();
    }
    ++seen_;

    if (config_.is_large(item.size.units)) {
      if (auto r = proxies_.replace(item.size.units)) {
        ledger_.place(r->bin, item);
      } else {
        int serial = ledger_.open();  // packed alone and closed for good
        ledger_.place(serial, item);
        ++counters_.large_miss_bins;
      }
    } else {
      int bin = slots_.place(item.size.units);
      if (bin < 0) {
        bin = ledger_.open();
        slots_.add(bin, kCapacity);
        bin = slots_.place(item.size.units);
        ++counters_.overflow_small_bins;
      }
      ledger_.place(bin, item);
    }
  }

 private:
  void build_chunk() {
    proxies_.clear();  // unreplaced proxies of the previous chunk are discarded
    if (sorted_sizes_.empty()) {
      sorted_sizes_.reserve(prefix_.size());
      for (const Item& item : prefix_) sorted_sizes_.push_back(item.size.units);
      std::sort(sorted_sizes_.begin(), sorted_sizes_.end(), std::greater<>());
    }

    // chunks are dealt round-robin from the size-sorted prefix so that every
    // chunk's composition tracks the prefix's
    std::vector<Units> sizes;
    const auto total = static_cast<std::int64_t>(sorted_sizes_.size());
    for (std::int64_t i = chunk_; i < total; i += chunk_count_)
      sizes.push_back(sorted_sizes_[static_cast<std::size_t>(i)]);

    Packing proxy = offline_pack(config_.offline, Instance::from_units(sizes));
    for (const Bin& bin : proxy.bins) {
      int serial = ledger_.open();
      Units large_load = 0;
      for (int id : bin.item_ids) {
        Units s = sizes[static_cast<std::size_t>(id)];
        if (config_.is_large(s)) {
          proxies_.add(s, serial);
          large_load += s;
        }
      }
      slots_.add(serial, kCapacity - large_load);  // small proxies vacate the bin
      ++counters_.proxy_bins_built;
    }
    ++counters_.proxy_packings_built;
    built_ = true;
  }

  MetaConfig config_;
  std::vector<Item> prefix_;
  std::vector<Units> sorted_sizes_;
  BinLedger& ledger_;
  SSlotSet& slots_;
  MetaCounters& counters_;
  std::int64_t chunk_count_ = 1;
  std::int64_t batch_ = 1;
  std::int64_t seen_ = 0;
  std::int64_t chunk_ = 0;
  bool built_ = false;
  ProxyState proxies_;
};

}  // namespace detail

MetaPacker::~MetaPacker() = default;

MetaPacker::MetaPacker(const MetaConfig& config, std::optional<std::int64_t> fixed_n)
    : config_(config), fixed_n_(fixed_n) {
  config_.validate();
  chunk_count_ = fixed_n_ ? 1 : config_.eta();
  if (fixed_n_) {
    const std::int64_t inv_sq = config_.inv_delta * config_.inv_delta;
    if (*fixed_n_ < inv_sq)
      throw std::invalid_argument("meta: n < 1/delta^2, sampling stage would be empty");
  }
}

MetaPacker MetaPacker::known_n(std::int64_t n, const MetaConfig& config) {
  return MetaPacker(config, n);
}

MetaPacker MetaPacker::unknown_n(const MetaConfig& config) {
  return MetaPacker(config, std::nullopt);
}

void MetaPacker::begin_super_stage() {
  ++super_index_;
  if (fixed_n_) {
    nominal_ = *fixed_n_;
  } else if (super_index_ <= 1) {
    // guesses n_i = 2^i n0: Gamma_0 holds n0 items and Gamma_1 holds
    // n_1 - n_0 = n0 items, then each super-stage doubles
    nominal_ = config_.inv_delta * config_.inv_delta * config_.inv_delta;
  } else if (nominal_ < (1LL << 61)) {
    nominal_ *= 2;
  }
  super_seen_ = 0;
  plan_ = plan_stages(nominal_, config_);
  phase_ = Phase::Sampling;
  nf_open_ = -1;
  sampling_weight_ = 0;
  sampling_large_ = 0;
  history_.clear();
  stage_index_ = 0;
  stage_seen_ = 0;
  runner_.reset();
  counters_.super_stage_sizes.push_back(0);
}

void MetaPacker::begin_stage() {
  ++stage_index_;
  stage_seen_ = 0;
  SSlotSet* slots = &global_slots_;
  if (config_.slot_scope == MetaConfig::SlotScope::PerStage) {
    stage_slots_.emplace();
    slots = &*stage_slots_;
  }
  runner_ = std::make_unique<detail::StageRunner>(config_, chunk_count_, history_, ledger_,
                                                  *slots, counters_);
}

void MetaPacker::place_next_fit(const Item& item) {
  if (nf_open_ < 0 || ledger_.load(nf_open_) + item.size.units > kCapacity) {
    nf_open_ = ledger_.open();
    ++counters_.nf_bins;
  }
  ledger_.place(nf_open_, item);
}

void MetaPacker::accept(const Item& item) {
  if (super_index_ < 0 || super_seen_ == nominal_) {
    if (fixed_n_ && super_index_ >= 0)
      throw std::invalid_argument("meta: more items than the declared n");
    begin_super_stage();
  }
  ++items_seen_;
  ++super_seen_;
  ++counters_.super_stage_sizes.back();

  switch (phase_) {
    case Phase::Sampling: {
      place_next_fit(item);
      history_.push_back(item);
      sampling_weight_ += item.size.units;
      if (config_.is_large(item.size.units)) ++sampling_large_;
      if (super_seen_ == plan_.sizes[0]) {
        // case split: |L(T0)| <= delta^3 w(T0), exact in integers
        const __int128 lhs = static_cast<__int128>(sampling_large_) * config_.inv_delta *
                             config_.inv_delta * config_.inv_delta * kCapacity;
        if (lhs <= static_cast<__int128>(sampling_weight_)) {
          phase_ = Phase::Case1;
          ++counters_.case1_super_stages;
        } else {
          phase_ = Phase::Stages;
          begin_stage();
        }
      }
      break;
    }
    case Phase::Case1:
      place_next_fit(item);  // the sampling stage's open bin keeps filling
      break;
    case Phase::Stages: {
      if (stage_seen_ == plan_.sizes[stage_index_]) begin_stage();
      runner_->accept(item);
      history_.push_back(item);
      ++stage_seen_;
      break;
    }
  }
}

Packing alg_known_n(const Instance& instance, std::int64_t n, const MetaConfig& config) {
  if (instance.n() != n)
    throw std::invalid_argument("alg_known_n: stream length differs from declared n");
  MetaPacker packer = MetaPacker::known_n(n, config);
  for (const Item& item : instance.items()) packer.accept(item);
  return packer.finish();
}

Packing imp_alg(const Instance& instance, const MetaConfig& config) {
  MetaPacker packer = MetaPacker::unknown_n(config);
  for (const Item& item : instance.items()) packer.accept(item);
  return packer.finish();
}

StagePackStats pack_stage_chunked(const std::vector<Item>& stage_items,
                                  const std::vector<Item>& prefix_items, const MetaConfig& config,
                                  SSlotSet& sslots) {
  BinLedger ledger;
  MetaCounters counters;
  detail::StageRunner runner(config, config.eta(), prefix_items, ledger, sslots, counters);
  for (const Item& item : stage_items) runner.accept(item);

  StagePackStats stats;
  stats.proxy_packings_built = counters.proxy_packings_built;
  stats.bins_used = ledger.to_packing().bin_count();
  return stats;
}

}  // namespace binpack
