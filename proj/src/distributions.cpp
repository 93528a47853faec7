#include "binpack/distributions.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace binpack {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& s : s_) {
    x = splitmix64(x);
    s = x;
  }
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
}

static inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double Rng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t trial) {
  return splitmix64(seed ^ ((trial + 1) * 0x9E3779B97F4A7C15ULL));
}

void validate(const DistributionSpec& spec) {
  if (const auto* u = std::get_if<ContinuousUniform>(&spec)) {
    if (!(0.0 <= u->a && u->a < u->b && u->b <= 1.0))
      throw std::invalid_argument("uniform: need 0 <= a < b <= 1");
  } else if (const auto* d = std::get_if<DiscreteUniform>(&spec)) {
    if (!(1 <= d->j && d->j <= d->k))
      throw std::invalid_argument("discrete_uniform: need 1 <= j <= k");
  } else if (const auto* f = std::get_if<FiniteDiscrete>(&spec)) {
    if (f->atoms.empty()) throw std::invalid_argument("finite: no atoms");
    double mass = 0.0;
    for (const auto& [size, prob] : f->atoms) {
      if (size.units <= 0 || size.units > kCapacity)
        throw std::invalid_argument("finite: atom size outside (0,1]");
      if (prob < 0.0) throw std::invalid_argument("finite: negative probability");
      mass += prob;
    }
    if (std::abs(mass - 1.0) > 1e-12)
      throw std::invalid_argument("finite: probabilities must sum to 1");
  } else if (const auto* e = std::get_if<Empirical>(&spec)) {
    if (e->sizes.empty()) throw std::invalid_argument("empirical: no sizes");
  }
}

static Units quantize_half_up(double value) {
  Units u = static_cast<Units>(std::floor(value * static_cast<double>(kCapacity) + 0.5));
  if (u < 1) u = 1;
  if (u > kCapacity) u = kCapacity;
  return u;
}

Instance sample_instance(const DistributionSpec& spec, std::int64_t n, std::uint64_t seed) {
  validate(spec);
  Rng rng(seed);
  std::vector<Units> sizes;
  sizes.reserve(static_cast<std::size_t>(n));

  if (const auto* u = std::get_if<ContinuousUniform>(&spec)) {
    for (std::int64_t i = 0; i < n; ++i)
      sizes.push_back(quantize_half_up(u->a + (u->b - u->a) * rng.next_unit()));
  } else if (const auto* d = std::get_if<DiscreteUniform>(&spec)) {
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t num = 1 + static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(d->j)));
      // round-half-up of num/k on the unit grid, exact in integers
      sizes.push_back((2 * num * kCapacity + d->k) / (2 * d->k));
    }
  } else if (const auto* f = std::get_if<FiniteDiscrete>(&spec)) {
    std::vector<double> cum;
    cum.reserve(f->atoms.size());
    double acc = 0.0;
    for (const auto& [size, prob] : f->atoms) {
      acc += prob;
      cum.push_back(acc);
    }
    for (std::int64_t i = 0; i < n; ++i) {
      double u01 = rng.next_unit();
      std::size_t idx = 0;
      while (idx + 1 < cum.size() && u01 >= cum[idx]) ++idx;
      sizes.push_back(f->atoms[idx].first.units);
    }
  } else if (const auto* e = std::get_if<Empirical>(&spec)) {
    for (std::int64_t i = 0; i < n; ++i)
      sizes.push_back(e->sizes[rng.next_below(e->sizes.size())]);
  }
  return Instance::from_units(sizes);
}

Instance random_permutation(const Instance& instance, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Item> items = instance.items();
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
  return Instance(std::move(items));
}

DistributionSpec distribution_from_json(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  DistributionSpec spec;
  if (kind == "uniform") {
    spec = ContinuousUniform{j.at("a").get<double>(), j.at("b").get<double>()};
  } else if (kind == "discrete_uniform") {
    spec = DiscreteUniform{j.at("j").get<std::int64_t>(), j.at("k").get<std::int64_t>()};
  } else if (kind == "finite") {
    FiniteDiscrete f;
    for (const auto& atom : j.at("atoms")) {
      Size size = atom.at(0).is_string() ? parse_size(atom.at(0).get<std::string>())
                                         : Size{quantize_half_up(atom.at(0).get<double>())};
      f.atoms.emplace_back(size, atom.at(1).get<double>());
    }
    spec = std::move(f);
  } else if (kind == "file") {
    Empirical e;
    e.path = j.at("path").get<std::string>();
    Instance inst = load_instance(e.path);
    for (const Item& item : inst.items()) e.sizes.push_back(item.size.units);
    spec = std::move(e);
  } else {
    throw std::invalid_argument("unknown distribution kind: " + kind);
  }
  validate(spec);
  return spec;
}

DistributionSpec load_distribution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open distribution file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return distribution_from_json(buf.str());
}

}  // namespace binpack
