#include "binpack/heuristics.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace binpack {

void NextFitPacker::accept(const Item& item) {
  if (open_ < 0 || ledger_.load(open_) + item.size.units > kCapacity) open_ = ledger_.open();
  ledger_.place(open_, item);
}

int FirstFitIndex::find(Units need) const {
  if (tree_[1] < need) return -1;
  std::size_t node = 1;
  while (node < static_cast<std::size_t>(leaves_)) {
    node *= 2;
    if (tree_[node] < need) ++node;
  }
  return static_cast<int>(node) - leaves_;
}

void FirstFitIndex::grow() {
  std::vector<Units> old(tree_.begin() + leaves_, tree_.begin() + leaves_ + bins_);
  leaves_ *= 2;
  tree_.assign(static_cast<std::size_t>(2 * leaves_), 0);
  std::copy(old.begin(), old.end(), tree_.begin() + leaves_);
  for (std::size_t i = static_cast<std::size_t>(leaves_) - 1; i >= 1; --i)
    tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
}

int FirstFitIndex::add_bin(Units remaining) {
  if (bins_ == leaves_) grow();
  int bin = bins_++;
  tree_[static_cast<std::size_t>(leaves_ + bin)] = remaining;
  for (std::size_t i = static_cast<std::size_t>(leaves_ + bin) / 2; i >= 1; i /= 2)
    tree_[i] = std::max(tree_[2 * i], tree_[2 * i + 1]);
  return bin;
}

void FirstFitIndex::consume(int bin, Units amount) {
  std::size_t node = static_cast<std::size_t>(leaves_ + bin);
  tree_[node] -= amount;
  for (node /= 2; node >= 1; node /= 2) tree_[node] = std::max(tree_[2 * node], tree_[2 * node + 1]);
}

void FirstFitPacker::accept(const Item& item) {
  int bin = index_.find(item.size.units);
  if (bin < 0) {
    bin = ledger_.open();
    index_.add_bin(kCapacity);  // index position == ledger serial
  }
  index_.consume(bin, item.size.units);
  ledger_.place(bin, item);
}

void BestFitPacker::accept(const Item& item) {
  const Units limit = kCapacity - item.size.units;
  auto it = by_load_.lower_bound({limit + 1, std::numeric_limits<int>::min()});
  int serial;
  if (it == by_load_.begin()) {
    serial = ledger_.open();
  } else {
    --it;
    serial = -it->second;
    by_load_.erase(it);
  }
  ledger_.place(serial, item);
  by_load_.insert({ledger_.load(serial), -serial});
}

HarmonicPacker::HarmonicPacker(int k) : k_(k), classes_(static_cast<std::size_t>(k)) {
  if (k < 2) throw std::invalid_argument("harmonic: k must be >= 2");
}

void HarmonicPacker::accept(const Item& item) {
  const Units s = item.size.units;
  const std::int64_t q = kCapacity / s;  // size in (1/(q+1), 1/q]
  if (q < k_) {
    ClassState& cls = classes_[static_cast<std::size_t>(q)];
    if (cls.open < 0 || cls.count == static_cast<int>(q)) {
      cls.open = ledger_.open();
      cls.count = 0;
    }
    ledger_.place(cls.open, item);
    ++cls.count;
  } else {
    if (residual_open_ < 0 || ledger_.load(residual_open_) + s > kCapacity)
      residual_open_ = ledger_.open();
    ledger_.place(residual_open_, item);
  }
}

Packing run_online(OnlinePacker& packer, const Instance& instance) {
  for (const Item& item : instance.items()) packer.accept(item);
  return packer.finish();
}

Packing next_fit(const Instance& instance) {
  NextFitPacker p;
  return run_online(p, instance);
}

Packing first_fit(const Instance& instance) {
  FirstFitPacker p;
  return run_online(p, instance);
}

Packing best_fit(const Instance& instance) {
  BestFitPacker p;
  return run_online(p, instance);
}

Packing harmonic(int k, const Instance& instance) {
  HarmonicPacker p(k);
  return run_online(p, instance);
}

static Instance sorted_descending(const Instance& instance) {
  std::vector<Item> items = instance.items();
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.size.units > b.size.units; });
  return Instance(std::move(items));
}

Packing sorted_variant(OnlineRule rule, const Instance& instance) {
  Instance sorted = sorted_descending(instance);
  switch (rule) {
    case OnlineRule::NF: return next_fit(sorted);
    case OnlineRule::FF: return first_fit(sorted);
    case OnlineRule::BF: return best_fit(sorted);
  }
  throw std::logic_error("unreachable");
}

OfflineAlgorithmId OfflineAlgorithmId::parse(std::string_view name) {
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  OfflineAlgorithmId id;
  if (lower == "nf") id.kind = Kind::NF;
  else if (lower == "ff") id.kind = Kind::FF;
  else if (lower == "bf") id.kind = Kind::BF;
  else if (lower == "nfd") id.kind = Kind::NFD;
  else if (lower == "ffd") id.kind = Kind::FFD;
  else if (lower == "bfd") id.kind = Kind::BFD;
  else if (lower == "harmonic") id.kind = Kind::Harmonic;
  else if (lower.rfind("harmonic:", 0) == 0) {
    id.kind = Kind::Harmonic;
    id.harmonic_k = std::stoi(lower.substr(9));
  } else {
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
  }
  return id;
}

std::string OfflineAlgorithmId::name() const {
  switch (kind) {
    case Kind::NF: return "nf";
    case Kind::FF: return "ff";
    case Kind::BF: return "bf";
    case Kind::NFD: return "nfd";
    case Kind::FFD: return "ffd";
    case Kind::BFD: return "bfd";
    case Kind::Harmonic: return "harmonic:" + std::to_string(harmonic_k);
  }
  return "?";
}

Packing offline_pack(OfflineAlgorithmId id, const Instance& instance) {
  using Kind = OfflineAlgorithmId::Kind;
  switch (id.kind) {
    case Kind::NF: return next_fit(instance);
    case Kind::FF: return first_fit(instance);
    case Kind::BF: return best_fit(instance);
    case Kind::NFD: return sorted_variant(OnlineRule::NF, instance);
    case Kind::FFD: return sorted_variant(OnlineRule::FF, instance);
    case Kind::BFD: return sorted_variant(OnlineRule::BF, instance);
    case Kind::Harmonic: return harmonic(id.harmonic_k, instance);
  }
  throw std::logic_error("unreachable");
}

}  // namespace binpack
