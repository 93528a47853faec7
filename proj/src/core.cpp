#include "binpack/core.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace binpack {

Size parse_size(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("size: empty string");
  std::size_t pos = 0;
  auto digits_from = [&](std::size_t start) {
    std::size_t p = start;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) ++p;
    return p;
  };

  std::size_t int_end = digits_from(pos);
  if (int_end == pos) throw std::invalid_argument("size: malformed '" + std::string(text) + "'");
  Units whole = 0;
  for (std::size_t i = pos; i < int_end; ++i) {
    whole = whole * 10 + (text[i] - '0');
    if (whole > 1) throw std::invalid_argument("size: out of range (0,1]");
  }

  Units frac = 0;
  std::size_t frac_digits = 0;
  std::size_t p = int_end;
  if (p < text.size() && text[p] == '.') {
    ++p;
    std::size_t frac_end = digits_from(p);
    frac_digits = frac_end - p;
    if (frac_digits == 0) throw std::invalid_argument("size: malformed '" + std::string(text) + "'");
    if (frac_digits > 9)
      throw std::invalid_argument("size: precision overflow (more than 9 fractional digits)");
    for (std::size_t i = p; i < frac_end; ++i) frac = frac * 10 + (text[i] - '0');
    for (std::size_t i = frac_digits; i < 9; ++i) frac *= 10;
    p = frac_end;
  }
  if (p != text.size()) throw std::invalid_argument("size: malformed '" + std::string(text) + "'");

  Units units = whole * kCapacity + frac;
  if (units <= 0 || units > kCapacity) throw std::invalid_argument("size: out of range (0,1]");
  return Size{units};
}

std::string format_size(Size s) {
  if (s.units == kCapacity) return "1";
  std::string frac = std::to_string(s.units);
  frac.insert(frac.begin(), 9 - frac.size(), '0');
  while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
  return "0." + frac;
}

Instance Instance::from_units(const std::vector<Units>& sizes) {
  std::vector<Item> items;
  items.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i)
    items.push_back({static_cast<int>(i), Size{sizes[i]}});
  return Instance(std::move(items));
}

std::vector<std::string> verify_packing(const Instance& instance, const Packing& packing) {
  std::vector<std::string> violations;
  const int n = instance.n();
  if (packing.n_items != n)
    violations.push_back("n mismatch: packing says " + std::to_string(packing.n_items) +
                         ", instance has " + std::to_string(n));

  std::vector<Units> size_of(static_cast<std::size_t>(n), -1);
  for (const Item& item : instance.items()) {
    if (item.id >= 0 && item.id < n) size_of[static_cast<std::size_t>(item.id)] = item.size.units;
  }

  std::vector<int> seen(static_cast<std::size_t>(n), 0);
  for (std::size_t b = 0; b < packing.bins.size(); ++b) {
    const Bin& bin = packing.bins[b];
    if (bin.item_ids.empty()) {
      violations.push_back("bin " + std::to_string(b) + " is empty");
      continue;
    }
    Units load = 0;
    for (int id : bin.item_ids) {
      if (id < 0 || id >= n || size_of[static_cast<std::size_t>(id)] < 0) {
        violations.push_back("unknown item id " + std::to_string(id));
        continue;
      }
      ++seen[static_cast<std::size_t>(id)];
      load += size_of[static_cast<std::size_t>(id)];
    }
    if (load != bin.load)
      violations.push_back("bin " + std::to_string(b) + " load field " + std::to_string(bin.load) +
                           " != recomputed " + std::to_string(load));
    if (load > kCapacity)
      violations.push_back("bin " + std::to_string(b) + " overfull: load " + std::to_string(load));
  }
  for (int id = 0; id < n; ++id) {
    int c = seen[static_cast<std::size_t>(id)];
    if (c == 0) violations.push_back("missing item id " + std::to_string(id));
    if (c > 1) violations.push_back("duplicate item id " + std::to_string(id));
  }
  return violations;
}

Units total_weight(const Instance& instance) {
  Units sum = 0;
  for (const Item& item : instance.items()) sum += item.size.units;
  return sum;
}

SizeSplit classify_large(const Instance& instance, Size delta) {
  SizeSplit split;
  for (const Item& item : instance.items()) {
    if (item.size >= delta)
      split.large.push_back(item);
    else
      split.small.push_back(item);
  }
  return split;
}

Packing BinLedger::to_packing() const {
  Packing packing;
  packing.n_items = static_cast<int>(trace_.size());
  for (const Bin& bin : bins_)
    if (!bin.item_ids.empty()) packing.bins.push_back(bin);
  return packing;
}

Instance read_instance(std::istream& in) {
  std::vector<Units> sizes;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    std::string token = line.substr(begin, end - begin + 1);
    try {
      sizes.push_back(parse_size(token).units);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return Instance::from_units(sizes);
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  return read_instance(in);
}

void write_instance(std::ostream& out, const Instance& instance) {
  for (const Item& item : instance.items()) out << format_size(item.size) << "\n";
}

std::string packing_to_json(const Packing& packing) {
  nlohmann::json bins = nlohmann::json::array();
  for (const Bin& bin : packing.bins) bins.push_back(bin.item_ids);
  nlohmann::json j{{"bins", std::move(bins)}, {"n", packing.n_items}};
  return j.dump();
}

Packing packing_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Packing packing;
  packing.n_items = j.at("n").get<int>();
  for (const auto& ids : j.at("bins")) {
    Bin bin;
    for (const auto& id : ids) bin.item_ids.push_back(id.get<int>());
    packing.bins.push_back(std::move(bin));
  }
  return packing;
}

void recompute_loads(Packing& packing, const Instance& instance) {
  std::vector<Units> size_of(static_cast<std::size_t>(instance.n()), 0);
  for (const Item& item : instance.items())
    size_of[static_cast<std::size_t>(item.id)] = item.size.units;
  for (Bin& bin : packing.bins) {
    bin.load = 0;
    for (int id : bin.item_ids) bin.load += size_of[static_cast<std::size_t>(id)];
  }
}

}  // namespace binpack
