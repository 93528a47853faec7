#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace binpack {

// All sizes and loads are exact integer counts of 1e-9 bin units. A bin has
// capacity kCapacity; "fits" always means load + size <= kCapacity, with no
// tolerance of any kind.
using Units = std::int64_t;
inline constexpr Units kCapacity = 1'000'000'000;

inline constexpr Units ceil_div(Units a, Units b) { return (a + b - 1) / b; }

// Item weight in (0,1], stored as units in [1, kCapacity].
struct Size {
  Units units = 0;

  friend constexpr bool operator==(Size, Size) = default;
  friend constexpr auto operator<=>(Size a, Size b) { return a.units <=> b.units; }
};

constexpr Size size_from_units(Units u) { return Size{u}; }

// Parses a decimal in (0,1] with at most 9 fractional digits. More than 9
// fractional digits is a precision-overflow error; nothing is ever rounded.
// Throws std::invalid_argument on malformed text or out-of-range values.
Size parse_size(std::string_view text);

// Canonical decimal rendering; parse_size(format_size(s)) == s.
std::string format_size(Size s);

struct Item {
  int id = 0;
  Size size;
};

// An ordered list of items; vector order is arrival order. Ids are unique
// and form {0,...,n-1} as a set (permuted instances keep original ids).
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Item> items) : items_(std::move(items)) {}

  static Instance from_units(const std::vector<Units>& sizes);

  const std::vector<Item>& items() const { return items_; }
  const Item& item(int pos) const { return items_[static_cast<std::size_t>(pos)]; }
  int n() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<Item> items_;
};

struct Bin {
  std::vector<int> item_ids;
  Units load = 0;
};

struct Packing {
  std::vector<Bin> bins;
  int n_items = 0;  // item count of the packed instance

  std::int64_t bin_count() const { return static_cast<std::int64_t>(bins.size()); }
};

// Returns a list of violations (empty means the packing is valid): overfull
// bins, empty bins, missing/duplicated/unknown item ids, wrong loads.
std::vector<std::string> verify_packing(const Instance& instance, const Packing& packing);

// Exact sum of item sizes in units.
Units total_weight(const Instance& instance);

struct SizeSplit {
  std::vector<Item> large;  // size >= delta, arrival order preserved
  std::vector<Item> small;  // size <  delta, arrival order preserved
};

// Partitions by the threshold delta (large means size >= delta).
SizeSplit classify_large(const Instance& instance, Size delta);

// Shared bin bookkeeping for the online packers. Bins are identified by
// their creation serial; the arrival trace records, per accepted item, the
// serial of the bin it went to (used by the online-contract replay tests).
class BinLedger {
 public:
  int open() {
    bins_.push_back({});
    return static_cast<int>(bins_.size()) - 1;
  }

  void place(int serial, const Item& item) {
    Bin& bin = bins_[static_cast<std::size_t>(serial)];
    bin.item_ids.push_back(item.id);
    bin.load += item.size.units;
    trace_.push_back(serial);
  }

  Units load(int serial) const { return bins_[static_cast<std::size_t>(serial)].load; }
  int bins_opened() const { return static_cast<int>(bins_.size()); }
  const std::vector<int>& trace() const { return trace_; }

  // Final packing: empty bins are dropped, creation order is preserved.
  Packing to_packing() const;

 private:
  std::vector<Bin> bins_;
  std::vector<int> trace_;
};

// --- instance / packing serialization ---------------------------------------
//
// Instance text: one decimal size per line, '#' starts a comment, arrival
// order is line order. Packing JSON: {"bins": [[ids...], ...], "n": N}.

Instance read_instance(std::istream& in);
Instance load_instance(const std::string& path);
void write_instance(std::ostream& out, const Instance& instance);

std::string packing_to_json(const Packing& packing);
Packing packing_from_json(std::string_view text);

// Fills in bin loads of a deserialized packing from the instance's sizes.
void recompute_loads(Packing& packing, const Instance& instance);

}  // namespace binpack
