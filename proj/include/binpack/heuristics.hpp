#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "binpack/core.hpp"

namespace binpack {

// An online packer places each item immediately and irrevocably; finish()
// is a snapshot, so it can be taken after any prefix.
class OnlinePacker {
 public:
  virtual ~OnlinePacker() = default;
  virtual void accept(const Item& item) = 0;
  virtual Packing finish() const = 0;
  virtual const std::vector<int>& trace() const = 0;
};

// Pack x into the most recently opened bin; open a new bin on misfit.
class NextFitPacker final : public OnlinePacker {
 public:
  void accept(const Item& item) override;
  Packing finish() const override { return ledger_.to_packing(); }
  const std::vector<int>& trace() const override { return ledger_.trace(); }

 private:
  BinLedger ledger_;
  int open_ = -1;
};

// Leftmost-feasible-bin search: a max segment tree over the remaining
// capacities of bins in opening order.
class FirstFitIndex {
 public:
  // Leftmost bin with remaining capacity >= need, or -1.
  int find(Units need) const;
  int add_bin(Units remaining);
  void consume(int bin, Units amount);
  Units remaining(int bin) const { return tree_[static_cast<std::size_t>(leaves_ + bin)]; }

 private:
  void grow();

  std::vector<Units> tree_ = {0, 0};  // 1-based segment tree, max over leaves
  int leaves_ = 1;
  int bins_ = 0;
};

// Pack x into the first (earliest-opened) bin that fits.
class FirstFitPacker final : public OnlinePacker {
 public:
  void accept(const Item& item) override;
  Packing finish() const override { return ledger_.to_packing(); }
  const std::vector<int>& trace() const override { return ledger_.trace(); }

 private:
  BinLedger ledger_;
  FirstFitIndex index_;
};

// Pack x into the fullest bin that fits; ties go to the lowest bin index.
class BestFitPacker final : public OnlinePacker {
 public:
  void accept(const Item& item) override;
  Packing finish() const override { return ledger_.to_packing(); }
  const std::vector<int>& trace() const override { return ledger_.trace(); }

 private:
  BinLedger ledger_;
  std::set<std::pair<Units, int>> by_load_;  // (load, -serial)
};

// Harmonic interval classes: size in (1/(i+1), 1/i] goes to class i for i < k
// and class-i bins hold exactly i items; sizes <= 1/k are packed by Next-Fit
// in a residual class. Classes never share bins.
class HarmonicPacker final : public OnlinePacker {
 public:
  explicit HarmonicPacker(int k);
  void accept(const Item& item) override;
  Packing finish() const override { return ledger_.to_packing(); }
  const std::vector<int>& trace() const override { return ledger_.trace(); }

 private:
  struct ClassState {
    int open = -1;
    int count = 0;
  };
  int k_;
  BinLedger ledger_;
  std::vector<ClassState> classes_;  // index 1..k-1
  int residual_open_ = -1;
};

Packing run_online(OnlinePacker& packer, const Instance& instance);

Packing next_fit(const Instance& instance);
Packing first_fit(const Instance& instance);
Packing best_fit(const Instance& instance);
Packing harmonic(int k, const Instance& instance);

enum class OnlineRule { NF, FF, BF };

// Sort by size descending (stable: ties keep arrival order), then apply the
// online rule. This is the offline *-Decreasing family.
Packing sorted_variant(OnlineRule rule, const Instance& instance);

// The pluggable offline algorithm A_alpha.
struct OfflineAlgorithmId {
  enum class Kind { NF, FF, BF, NFD, FFD, BFD, Harmonic };
  Kind kind = Kind::FFD;
  int harmonic_k = 10;

  static OfflineAlgorithmId parse(std::string_view name);
  std::string name() const;
};

Packing offline_pack(OfflineAlgorithmId id, const Instance& instance);

}  // namespace binpack
