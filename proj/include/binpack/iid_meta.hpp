#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "binpack/core.hpp"
#include "binpack/heuristics.hpp"

namespace binpack {

namespace detail {
class StageRunner;
}

// Parameters of the i.i.d. meta-algorithm. The algorithmic knob is delta
// (a power of 1/2, stored as inv_delta = 1/delta); epsilon only derives it:
// delta is rounded down to the largest power of 1/2 strictly below eps/8.
// eta = 1/delta is the chunk count used by the chunked stage packer.
struct MetaConfig {
  double epsilon = 0.5;
  std::int64_t inv_delta = 0;  // 0 = derive from epsilon
  OfflineAlgorithmId offline;  // A_alpha, default FFD

  // Where small items are Next-Fit packed: one global slot set shared by
  // every stage and super-stage, or a fresh set per stage. imp_alg uses
  // Global; PerStage exists for the paired monotonicity comparison.
  enum class SlotScope { Global, PerStage };
  SlotScope slot_scope = SlotScope::Global;

  static MetaConfig from_epsilon(double eps,
                                 OfflineAlgorithmId offline = OfflineAlgorithmId{});

  std::int64_t eta() const { return inv_delta; }
  bool is_large(Units u) const { return u * inv_delta >= kCapacity; }

  // Throws std::invalid_argument if inv_delta is not a power of two >= 2
  // (deriving from epsilon requires epsilon in (0,1)).
  void validate() const;
};

// Stage layout for one run over n items: sizes[0] = floor(delta^2 n) is the
// sampling stage, sizes[j] = floor(2^(j-1) delta^2 n) for j in [m-1], and
// the last stage absorbs the rounding remainder so the sizes sum to n.
struct StagePlan {
  std::int64_t n = 0;
  std::vector<std::int64_t> sizes;

  std::int64_t stage_count() const { return static_cast<std::int64_t>(sizes.size()); }
};

// Requires n >= 1/delta^2 (the sampling stage must be nonempty).
StagePlan plan_stages(std::int64_t n, const MetaConfig& config);

// Next-Fit over a growing list of slots. The cursor only moves forward: a
// misfit advances it permanently, and slots behind the cursor never receive
// items, even if slots are appended later.
class SSlotSet {
 public:
  void add(int bin, Units capacity) { slots_.push_back({bin, capacity, 0}); }

  // Returns the bin serial the item was placed in, or -1 if no slot fits.
  int place(Units size) {
    while (cursor_ < slots_.size()) {
      Slot& slot = slots_[cursor_];
      if (slot.used + size <= slot.capacity) {
        slot.used += size;
        return slot.bin;
      }
      ++cursor_;
    }
    return -1;
  }

  std::size_t slot_count() const { return slots_.size(); }

 private:
  struct Slot {
    int bin;
    Units capacity;
    Units used;
  };
  std::vector<Slot> slots_;
  std::size_t cursor_ = 0;
};

// The large proxy items of the current chunk packing, ordered by size.
// replace() hands out the smallest proxy that can stand in for a real item.
class ProxyState {
 public:
  void add(Units proxy_size, int bin) { slots_.insert({proxy_size, bin, seq_++}); }

  struct Replacement {
    int bin;
    Units proxy_size;
  };

  std::optional<Replacement> replace(Units real_size);

  void clear() { slots_.clear(); }
  std::size_t remaining() const { return slots_.size(); }

 private:
  std::set<std::tuple<Units, int, std::int64_t>> slots_;
  std::int64_t seq_ = 0;
};

struct MetaCounters {
  std::int64_t nf_bins = 0;              // sampling-stage and Case-1 Next-Fit bins
  std::int64_t proxy_bins_built = 0;     // bins opened for proxy packings
  std::int64_t large_miss_bins = 0;      // closed bins for unreplaceable large items
  std::int64_t overflow_small_bins = 0;  // full-bin S-slots opened by small items
  std::int64_t proxy_packings_built = 0;
  std::int64_t case1_super_stages = 0;
  std::vector<std::int64_t> super_stage_sizes;  // items consumed per super-stage
};

// One online run of the meta-algorithm. Known-n mode is the fixed-n
// algorithm: a single super-stage whose stage prefixes are proxy-packed
// whole. Unknown-n mode guesses n0 = 1/delta^3 items and doubles the guess
// each super-stage; stages are proxy-packed lazily in eta chunks so a
// truncated stream never pays for packings it does not use.
class MetaPacker final : public OnlinePacker {
 public:
  static MetaPacker known_n(std::int64_t n, const MetaConfig& config);
  static MetaPacker unknown_n(const MetaConfig& config);

  ~MetaPacker() override;
  MetaPacker(const MetaPacker&) = delete;
  MetaPacker& operator=(const MetaPacker&) = delete;

  void accept(const Item& item) override;
  Packing finish() const override { return ledger_.to_packing(); }
  const std::vector<int>& trace() const override { return ledger_.trace(); }

  const MetaCounters& counters() const { return counters_; }
  std::int64_t items_seen() const { return items_seen_; }

 private:
  MetaPacker(const MetaConfig& config, std::optional<std::int64_t> fixed_n);

  void begin_super_stage();
  void begin_stage();
  void place_next_fit(const Item& item);

  enum class Phase { Sampling, Case1, Stages };

  MetaConfig config_;
  std::optional<std::int64_t> fixed_n_;
  std::int64_t chunk_count_;  // 1 in known-n mode, eta otherwise

  BinLedger ledger_;
  SSlotSet global_slots_;
  MetaCounters counters_;
  std::int64_t items_seen_ = 0;

  // state of the current super-stage
  std::int64_t super_index_ = -1;
  std::int64_t nominal_ = 0;
  std::int64_t super_seen_ = 0;
  StagePlan plan_;
  Phase phase_ = Phase::Sampling;
  int nf_open_ = -1;
  Units sampling_weight_ = 0;
  std::int64_t sampling_large_ = 0;
  std::vector<Item> history_;  // items of this super-stage, in arrival order
  std::size_t stage_index_ = 0;
  std::int64_t stage_seen_ = 0;
  std::optional<SSlotSet> stage_slots_;
  std::unique_ptr<detail::StageRunner> runner_;
};

// Algorithm for a stream of exactly n items (throws if the count differs).
Packing alg_known_n(const Instance& instance, std::int64_t n, const MetaConfig& config);

// The doubling variant; n is unknown and the stream may end at any point.
Packing imp_alg(const Instance& instance, const MetaConfig& config);

struct StagePackStats {
  std::int64_t proxy_packings_built = 0;
  std::int64_t bins_used = 0;  // bins holding at least one real item afterwards
};

// Packs one stage against its prefix in eta chunks (standalone harness for
// the chunked stage packer; imp_alg drives the same machinery internally).
StagePackStats pack_stage_chunked(const std::vector<Item>& stage_items,
                                  const std::vector<Item>& prefix_items, const MetaConfig& config,
                                  SSlotSet& sslots);

}  // namespace binpack
