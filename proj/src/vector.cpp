#include "binpack/vector.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace binpack {

VectorInstance::VectorInstance(int dim, std::vector<VectorItem> items)
    : dim_(dim), items_(std::move(items)) {
  if (dim_ < 1) throw std::invalid_argument("vector instance: dimension must be >= 1");
  for (const VectorItem& item : items_)
    if (static_cast<int>(item.coords.size()) != dim_)
      throw std::invalid_argument("vector instance: item dimension mismatch");
}

Size round_to_max(const VectorItem& item) {
  Units best = 0;
  for (Size c : item.coords) best = std::max(best, c.units);
  return Size{best};
}

Instance shadow_instance(const VectorInstance& instance) {
  std::vector<Item> items;
  items.reserve(instance.items().size());
  for (const VectorItem& item : instance.items()) items.push_back({item.id, round_to_max(item)});
  return Instance(std::move(items));
}

VectorPacking pack_vector(const VectorInstance& instance, OnlinePacker& shadow_packer) {
  for (const VectorItem& item : instance.items())
    shadow_packer.accept({item.id, round_to_max(item)});
  Packing scalar = shadow_packer.finish();

  std::vector<const VectorItem*> by_id(instance.items().size());
  for (const VectorItem& item : instance.items())
    by_id[static_cast<std::size_t>(item.id)] = &item;

  VectorPacking packing;
  packing.n_items = instance.n();
  for (const Bin& bin : scalar.bins) {
    std::vector<Units> loads(static_cast<std::size_t>(instance.dim()), 0);
    for (int id : bin.item_ids)
      for (int j = 0; j < instance.dim(); ++j)
        loads[static_cast<std::size_t>(j)] +=
            by_id[static_cast<std::size_t>(id)]->coords[static_cast<std::size_t>(j)].units;
    packing.bins.push_back(bin.item_ids);
    packing.loads.push_back(std::move(loads));
  }
  return packing;
}

VectorPacking pack_vector_meta(const VectorInstance& instance, const MetaConfig& config) {
  MetaPacker packer = MetaPacker::unknown_n(config);
  return pack_vector(instance, packer);
}

std::vector<std::string> verify_vector_packing(const VectorInstance& instance,
                                               const VectorPacking& packing) {
  std::vector<std::string> violations;
  const int n = instance.n();
  std::vector<const VectorItem*> by_id(static_cast<std::size_t>(n), nullptr);
  for (const VectorItem& item : instance.items())
    by_id[static_cast<std::size_t>(item.id)] = &item;

  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    if (packing.bins[b].empty()) {
      violations.push_back("bin " + std::to_string(b) + " is empty");
      continue;
    }
    std::vector<Units> loads(static_cast<std::size_t>(instance.dim()), 0);
    for (int id : packing.bins[b]) {
      if (id < 0 || id >= n || !by_id[static_cast<std::size_t>(id)]) {
        violations.push_back("unknown item id " + std::to_string(id));
        continue;
      }
      ++seen[static_cast<std::size_t>(id)];
      for (int j = 0; j < instance.dim(); ++j)
        loads[static_cast<std::size_t>(j)] +=
            by_id[static_cast<std::size_t>(id)]->coords[static_cast<std::size_t>(j)].units;
    }
    for (int j = 0; j < instance.dim(); ++j)
      if (loads[static_cast<std::size_t>(j)] > kCapacity)
        violations.push_back("bin " + std::to_string(b) + " overfull in dimension " +
                             std::to_string(j));
  }
  for (int id = 0; id < n; ++id) {
    if (seen[static_cast<std::size_t>(id)] == 0)
      violations.push_back("missing item id " + std::to_string(id));
    if (seen[static_cast<std::size_t>(id)] > 1)
      violations.push_back("duplicate item id " + std::to_string(id));
  }
  return violations;
}

namespace {

class VectorSearch {
 public:
  explicit VectorSearch(const VectorInstance& instance) : instance_(instance) {}

  std::int64_t run() {
    best_ = instance_.n();
    if (best_ == 0) return 0;
    dfs(0);
    return best_;
  }

 private:
  void dfs(int idx) {
    if (idx == instance_.n()) {
      best_ = std::min(best_, static_cast<std::int64_t>(loads_.size()));
      return;
    }
    if (static_cast<std::int64_t>(loads_.size()) >= best_) return;

    const VectorItem& item = instance_.items()[static_cast<std::size_t>(idx)];
    const std::size_t open = loads_.size();  // recursion grows and shrinks loads_
    for (std::size_t b = 0; b < open; ++b) {
      bool fits = true;
      for (int j = 0; j < instance_.dim(); ++j)
        if (loads_[b][static_cast<std::size_t>(j)] +
                item.coords[static_cast<std::size_t>(j)].units > kCapacity) {
          fits = false;
          break;
        }
      if (!fits) continue;
      for (int j = 0; j < instance_.dim(); ++j)
        loads_[b][static_cast<std::size_t>(j)] += item.coords[static_cast<std::size_t>(j)].units;
      dfs(idx + 1);
      for (int j = 0; j < instance_.dim(); ++j)
        loads_[b][static_cast<std::size_t>(j)] -= item.coords[static_cast<std::size_t>(j)].units;
    }
    std::vector<Units> fresh(static_cast<std::size_t>(instance_.dim()), 0);
    for (int j = 0; j < instance_.dim(); ++j)
      fresh[static_cast<std::size_t>(j)] = item.coords[static_cast<std::size_t>(j)].units;
    loads_.push_back(std::move(fresh));
    dfs(idx + 1);
    loads_.pop_back();
  }

  const VectorInstance& instance_;
  std::vector<std::vector<Units>> loads_;
  std::int64_t best_ = 0;
};

}  // namespace

std::int64_t opt_vector_exact(const VectorInstance& instance, int max_items) {
  if (instance.n() > max_items)
    throw std::invalid_argument("opt_vector_exact: instance too large");
  return VectorSearch(instance).run();
}

VectorInstance read_vector_instance(std::istream& in) {
  std::vector<VectorItem> items;
  int dim = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    std::string body = line.substr(begin, end - begin + 1);

    VectorItem item;
    item.id = static_cast<int>(items.size());
    std::stringstream fields(body);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t fb = field.find_first_not_of(" \t");
      std::size_t fe = field.find_last_not_of(" \t");
      if (fb == std::string::npos)
        throw std::invalid_argument("line " + std::to_string(lineno) + ": empty coordinate");
      item.coords.push_back(parse_size(field.substr(fb, fe - fb + 1)));
    }
    if (dim < 0) dim = static_cast<int>(item.coords.size());
    if (static_cast<int>(item.coords.size()) != dim)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": dimension mismatch");
    items.push_back(std::move(item));
  }
  return VectorInstance(dim < 0 ? 1 : dim, std::move(items));
}

VectorInstance load_vector_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector instance file: " + path);
  return read_vector_instance(in);
}

}  // namespace binpack
