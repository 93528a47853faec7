#include "binpack/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "binpack/matching.hpp"

namespace binpack {

AlgoSpec AlgoSpec::parse(std::string_view name) {
  AlgoSpec spec;
  std::string lower(name);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "mbf") {
    spec.kind = Kind::MBF;
  } else if (lower == "meta") {
    spec.kind = Kind::Meta;
    spec.meta = MetaConfig::from_epsilon(0.5);
  } else {
    spec.kind = Kind::Heuristic;
    spec.heuristic = OfflineAlgorithmId::parse(lower);
  }
  return spec;
}

std::string AlgoSpec::name() const {
  switch (kind) {
    case Kind::Heuristic: return heuristic.name();
    case Kind::MBF: return "mbf";
    case Kind::Meta: return "meta(" + meta.offline.name() + ")";
  }
  return "?";
}

Packing run_algo(const AlgoSpec& algo, const Instance& instance) {
  switch (algo.kind) {
    case AlgoSpec::Kind::Heuristic: return offline_pack(algo.heuristic, instance);
    case AlgoSpec::Kind::MBF: return modified_best_fit(instance);
    case AlgoSpec::Kind::Meta: return imp_alg(instance, algo.meta);
  }
  throw std::logic_error("unreachable");
}

Denominator compute_denominator(const Instance& instance, const ExactConfig& config) {
  Denominator denom;
  try {
    ExactResult result = opt_exact(instance, config);
    denom.bins = result.bins;
    denom.exact = true;
    denom.witness = std::move(result.witness);
  } catch (const ExactError&) {
    denom.bins = lower_bound(instance);
    denom.exact = false;
  }
  return denom;
}

double TrialStats::ratio_of_means() const {
  std::int64_t algo = 0, denom = 0;
  for (std::int64_t b : algo_bins) algo += b;
  for (std::int64_t b : denom_bins) denom += b;
  return denom == 0 ? 0.0 : static_cast<double>(algo) / static_cast<double>(denom);
}

double TrialStats::mean_ratio() const {
  if (algo_bins.empty()) return 0.0;
  double sum = 0.0;
  for (int t = 0; t < trials(); ++t)
    sum += static_cast<double>(algo_bins[static_cast<std::size_t>(t)]) /
           static_cast<double>(denom_bins[static_cast<std::size_t>(t)]);
  return sum / trials();
}

double TrialStats::ratio_std() const {
  if (trials() < 2) return 0.0;
  const double mean = mean_ratio();
  double acc = 0.0;
  for (int t = 0; t < trials(); ++t) {
    double r = static_cast<double>(algo_bins[static_cast<std::size_t>(t)]) /
               static_cast<double>(denom_bins[static_cast<std::size_t>(t)]);
    acc += (r - mean) * (r - mean);
  }
  return std::sqrt(acc / (trials() - 1));
}

bool TrialStats::all_exact() const {
  for (char e : denom_exact)
    if (!e) return false;
  return true;
}

namespace {

bool three_partition_instance(const Instance& instance) {
  for (const Item& item : instance.items())
    if (!is_three_partition_size(item.size.units)) return false;
  return true;
}

void record_trial(TrialStats& stats, const Instance& instance, const Packing& packing,
                  const Denominator& denom) {
  stats.algo_bins.push_back(packing.bin_count());
  stats.denom_bins.push_back(denom.bins);
  stats.denom_exact.push_back(denom.exact ? 1 : 0);

  auto census = k_bin_census(packing);
  auto at = [&](std::size_t k) { return census.size() > k ? census[k] : 0; };
  stats.ones.push_back(at(1));
  stats.twos.push_back(at(2));
  stats.threes.push_back(at(3));

  if (three_partition_instance(instance)) stats.triplets.push_back(count_s_triplets(instance));
  if (denom.exact && denom.witness) stats.mu.push_back(mu_fraction(*denom.witness));
}

}  // namespace

TrialStats estimate_ecr(const DistributionSpec& spec, const AlgoSpec& algo, std::int64_t n,
                        int trials, std::uint64_t seed, const ExactConfig& exact) {
  if (trials < 1) throw std::invalid_argument("estimate_ecr: trials must be >= 1");
  TrialStats stats;
  for (int t = 0; t < trials; ++t) {
    Instance instance = sample_instance(spec, n, derive_seed(seed, static_cast<std::uint64_t>(t)));
    Packing packing = run_algo(algo, instance);
    Denominator denom = compute_denominator(instance, exact);
    record_trial(stats, instance, packing, denom);
  }
  return stats;
}

TrialStats estimate_arr(const Instance& instance, const AlgoSpec& algo, int trials,
                        std::uint64_t seed, const ExactConfig& exact) {
  if (trials < 1) throw std::invalid_argument("estimate_arr: trials must be >= 1");
  Denominator denom = compute_denominator(instance, exact);
  TrialStats stats;
  for (int t = 0; t < trials; ++t) {
    Instance permuted = random_permutation(instance, derive_seed(seed, static_cast<std::uint64_t>(t)));
    Packing packing = run_algo(algo, permuted);
    record_trial(stats, permuted, packing, denom);
  }
  return stats;
}

void write_csv(std::ostream& out, const TrialStats& stats) {
  out << "trial,algo_bins,denom_bins,denom_kind,ratio,x3,triplets,mu\n";
  for (int t = 0; t < stats.trials(); ++t) {
    const auto ti = static_cast<std::size_t>(t);
    double ratio = static_cast<double>(stats.algo_bins[ti]) /
                   static_cast<double>(stats.denom_bins[ti]);
    out << t << ',' << stats.algo_bins[ti] << ',' << stats.denom_bins[ti] << ','
        << (stats.denom_exact[ti] ? "exact" : "lower_bound") << ',' << ratio << ','
        << stats.threes[ti] << ',';
    if (ti < stats.triplets.size()) out << stats.triplets[ti];
    out << ',';
    if (ti < stats.mu.size()) out << stats.mu[ti];
    out << '\n';
  }
}

std::int64_t count_s_triplets(const Instance& instance) {
  std::int64_t count = 0;
  int run = 0;
  for (const Item& item : instance.items()) {
    if (!is_three_partition_size(item.size.units))
      throw std::invalid_argument("count_s_triplets: size outside (1/4,1/2]");
    if (is_small_3p(item.size.units)) {
      if (++run == 3) {
        ++count;
        run = 0;
      }
    } else {
      run = 0;
    }
  }
  return count;
}

std::vector<std::array<int, 3>> s_triplet_ids(const Instance& instance) {
  std::vector<std::array<int, 3>> triplets;
  std::array<int, 3> run{};
  int len = 0;
  for (const Item& item : instance.items()) {
    if (!is_three_partition_size(item.size.units))
      throw std::invalid_argument("s_triplet_ids: size outside (1/4,1/2]");
    if (is_small_3p(item.size.units)) {
      run[static_cast<std::size_t>(len++)] = item.id;
      if (len == 3) {
        triplets.push_back(run);
        len = 0;
      }
    } else {
      len = 0;
    }
  }
  return triplets;
}

std::vector<std::int64_t> k_bin_census(const Packing& packing) {
  std::size_t max_k = 0;
  for (const Bin& bin : packing.bins) max_k = std::max(max_k, bin.item_ids.size());
  std::vector<std::int64_t> census(max_k + 1, 0);
  for (const Bin& bin : packing.bins) ++census[bin.item_ids.size()];
  return census;
}

double mu_fraction(const Packing& opt_packing) {
  if (opt_packing.bins.empty()) return 0.0;
  auto census = k_bin_census(opt_packing);
  std::int64_t twos = census.size() > 2 ? census[2] : 0;
  return static_cast<double>(twos) / static_cast<double>(opt_packing.bin_count());
}

TripletCheckResult triplet_claim_check(const Instance& instance, std::uint64_t seed) {
  TripletCheckResult result;
  Instance permuted = random_permutation(instance, seed);
  auto triplets = s_triplet_ids(permuted);
  Packing packing = best_fit(permuted);

  std::vector<Units> size_of(static_cast<std::size_t>(instance.n()), 0);
  for (const Item& item : instance.items())
    size_of[static_cast<std::size_t>(item.id)] = item.size.units;

  // for each id: the size class of its final bin (3-bin / SS-bin / other)
  std::vector<char> in_good_bin(static_cast<std::size_t>(instance.n()), 0);
  std::int64_t x3 = 0;
  for (const Bin& bin : packing.bins) {
    bool three = bin.item_ids.size() == 3;
    bool ss = bin.item_ids.size() == 2 &&
              is_small_3p(size_of[static_cast<std::size_t>(bin.item_ids[0])]) &&
              is_small_3p(size_of[static_cast<std::size_t>(bin.item_ids[1])]);
    if (three) ++x3;
    if (three || ss)
      for (int id : bin.item_ids) in_good_bin[static_cast<std::size_t>(id)] = 1;
  }

  for (const auto& triplet : triplets) {
    bool covered = false;
    for (int id : triplet)
      if (in_good_bin[static_cast<std::size_t>(id)]) covered = true;
    if (!covered) {
      result.ok = false;
      result.counterexample = "triplet (" + std::to_string(triplet[0]) + "," +
                              std::to_string(triplet[1]) + "," + std::to_string(triplet[2]) +
                              ") has no member in a 3-bin or SS-bin";
      return result;
    }
  }

  const auto x_sigma = static_cast<std::int64_t>(triplets.size());
  if (3 * x3 < x_sigma - 3) {
    result.ok = false;
    result.counterexample = "X3 = " + std::to_string(x3) + " < X_sigma/3 - 1 with X_sigma = " +
                            std::to_string(x_sigma);
  }
  return result;
}

TripletExpectation triplet_expectation_check(std::int64_t n, std::int64_t m, int trials,
                                             std::uint64_t seed) {
  if (m > n) throw std::invalid_argument("triplet_expectation_check: m > n");
  std::vector<Units> sizes;
  sizes.reserve(static_cast<std::size_t>(n));
  const Units small = 300'000'000;   // (1/4,1/3]
  const Units medium = 400'000'000;  // (1/3,1/2]
  for (std::int64_t i = 0; i < n; ++i) sizes.push_back(i < m ? small : medium);
  Instance instance = Instance::from_units(sizes);

  TripletExpectation result;
  result.trials = trials;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    Instance permuted =
        random_permutation(instance, derive_seed(seed, static_cast<std::uint64_t>(t)));
    auto count = static_cast<double>(count_s_triplets(permuted));
    sum += count;
    sum_sq += count * count;
  }
  result.measured_mean = sum / trials;
  if (trials > 1) {
    double var = (sum_sq - sum * sum / trials) / (trials - 1);
    result.std_error = std::sqrt(std::max(var, 0.0) / trials);
  }
  result.exact_form = static_cast<double>(m / 3) * static_cast<double>(m) *
                      static_cast<double>(m - 1) /
                      (static_cast<double>(n) * static_cast<double>(n - 1));
  return result;
}

double three_partition_bound(double mu) {
  double first = 1.5 - mu / 2.0;
  double one = (1.0 - mu);
  double second = 1.5 - one * one * one / 162.0;
  return std::min(first, second);
}

double three_partition_worst_mu() {
  // 81*mu - (1-mu)^3 is increasing in mu; bisect the sign change.
  double lo = 0.0, hi = 0.05;
  while (hi - lo > 1e-12) {
    double mid = (lo + hi) / 2.0;
    double v = 81.0 * mid - (1.0 - mid) * (1.0 - mid) * (1.0 - mid);
    (v < 0.0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2.0;
}

}  // namespace binpack
