#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "binpack/core.hpp"
#include "binpack/heuristics.hpp"
#include "binpack/iid_meta.hpp"

namespace binpack {

struct VectorItem {
  int id = 0;
  std::vector<Size> coords;  // d entries, each in (0,1]
};

class VectorInstance {
 public:
  VectorInstance() = default;
  VectorInstance(int dim, std::vector<VectorItem> items);

  int dim() const { return dim_; }
  const std::vector<VectorItem>& items() const { return items_; }
  int n() const { return static_cast<int>(items_.size()); }

 private:
  int dim_ = 1;
  std::vector<VectorItem> items_;
};

struct VectorPacking {
  std::vector<std::vector<int>> bins;        // item ids per bin
  std::vector<std::vector<Units>> loads;     // per bin, per dimension
  int n_items = 0;

  std::int64_t bin_count() const { return static_cast<std::int64_t>(bins.size()); }
};

// Max over coordinates; the scalar shadow of a vector item.
Size round_to_max(const VectorItem& item);

// The 1-D instance of shadows, same ids and arrival order.
Instance shadow_instance(const VectorInstance& instance);

// Feeds the shadow stream to the scalar packer and places each vector item
// in the bin its shadow received. Every coordinate is bounded by the shadow,
// so per-dimension feasibility is inherited from the scalar packing.
VectorPacking pack_vector(const VectorInstance& instance, OnlinePacker& shadow_packer);

// Default reduction target: the doubling meta-algorithm.
VectorPacking pack_vector_meta(const VectorInstance& instance, const MetaConfig& config);

std::vector<std::string> verify_vector_packing(const VectorInstance& instance,
                                               const VectorPacking& packing);

// Exhaustive optimum with d-dimensional feasibility; n <= 12.
std::int64_t opt_vector_exact(const VectorInstance& instance, int max_items = 12);

// One item per line, d comma-separated decimals.
VectorInstance read_vector_instance(std::istream& in);
VectorInstance load_vector_instance(const std::string& path);

}  // namespace binpack
