#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "binpack/core.hpp"
#include "binpack/distributions.hpp"
#include "binpack/exact.hpp"
#include "binpack/experiments.hpp"
#include "binpack/iid_meta.hpp"
#include "binpack/matching.hpp"
#include "binpack/vector.hpp"

using namespace binpack;

namespace {

AlgoSpec build_algo(const std::string& name, double epsilon, std::int64_t delta_inv,
                    const std::string& offline) {
  AlgoSpec algo = AlgoSpec::parse(name);
  if (algo.kind == AlgoSpec::Kind::Meta) {
    algo.meta = MetaConfig::from_epsilon(epsilon, OfflineAlgorithmId::parse(offline));
    if (delta_inv > 0) {
      algo.meta.inv_delta = delta_inv;
      algo.meta.validate();
    }
  }
  return algo;
}

void print_summary(const AlgoSpec& algo, const TrialStats& stats) {
  int exact_count = 0;
  for (char e : stats.denom_exact) exact_count += e ? 1 : 0;
  std::cout << "algorithm:      " << algo.name() << "\n"
            << "trials:         " << stats.trials() << "\n"
            << "ratio_of_means: " << stats.ratio_of_means() << "\n"
            << "mean_ratio:     " << stats.mean_ratio() << " (std " << stats.ratio_std() << ")\n"
            << "denominators:   " << exact_count << " exact, "
            << stats.trials() - exact_count << " lower_bound\n";
}

void maybe_write_csv(const std::string& path, const TrialStats& stats) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open csv output: " + path);
  write_csv(out, stats);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bin packing heuristics, exact oracles and stochastic experiment harness"};
  app.require_subcommand(1);

  // ---- pack ----
  std::string pack_algo = "bf", pack_input, pack_out;
  double pack_epsilon = 0.5;
  std::int64_t pack_delta_inv = 0;
  std::string pack_offline = "ffd";
  auto* pack = app.add_subcommand("pack", "pack an instance file with one algorithm");
  pack->add_option("--algo", pack_algo, "nf|ff|bf|nfd|ffd|bfd|harmonic[:k]|mbf|meta");
  pack->add_option("--input", pack_input, "instance file, one size per line")->required();
  pack->add_option("--out", pack_out, "write the packing as JSON");
  pack->add_option("--epsilon", pack_epsilon, "meta: accuracy parameter");
  pack->add_option("--delta-inv", pack_delta_inv, "meta: override 1/delta (power of two)");
  pack->add_option("--offline", pack_offline, "meta: offline algorithm A_alpha");
  pack->callback([&] {
    Instance instance = load_instance(pack_input);
    AlgoSpec algo = build_algo(pack_algo, pack_epsilon, pack_delta_inv, pack_offline);
    Packing packing = run_algo(algo, instance);
    auto violations = verify_packing(instance, packing);
    if (!violations.empty()) throw std::runtime_error("internal: invalid packing produced");
    std::cout << algo.name() << ": " << packing.bin_count() << " bins for " << instance.n()
              << " items (weight " << static_cast<double>(total_weight(instance)) / kCapacity
              << ")\n";
    if (!pack_out.empty()) {
      std::ofstream out(pack_out);
      if (!out) throw std::runtime_error("cannot open output: " + pack_out);
      out << packing_to_json(packing) << "\n";
    }
  });

  // ---- simulate-iid ----
  std::string iid_dist, iid_algo = "bf", iid_csv, iid_offline = "ffd";
  std::int64_t iid_n = 1000, iid_delta_inv = 0;
  int iid_trials = 10;
  std::uint64_t iid_seed = 1;
  double iid_epsilon = 0.5;
  auto* iid = app.add_subcommand("simulate-iid", "expected competitive ratio under i.i.d. draws");
  iid->add_option("--dist", iid_dist, "distribution spec JSON file")->required();
  iid->add_option("--algo", iid_algo, "algorithm id or 'meta'");
  iid->add_option("--n", iid_n, "items per trial")->required();
  iid->add_option("--trials", iid_trials, "number of trials");
  iid->add_option("--seed", iid_seed, "base seed");
  iid->add_option("--epsilon", iid_epsilon, "meta: accuracy parameter");
  iid->add_option("--delta-inv", iid_delta_inv, "meta: override 1/delta (power of two)");
  iid->add_option("--offline", iid_offline, "meta: offline algorithm A_alpha");
  iid->add_option("--csv", iid_csv, "write per-trial rows to this file");
  iid->callback([&] {
    DistributionSpec spec = load_distribution(iid_dist);
    AlgoSpec algo = build_algo(iid_algo, iid_epsilon, iid_delta_inv, iid_offline);
    TrialStats stats = estimate_ecr(spec, algo, iid_n, iid_trials, iid_seed);
    print_summary(algo, stats);
    maybe_write_csv(iid_csv, stats);
  });

  // ---- simulate-random-order ----
  std::string ro_input, ro_gen, ro_algo = "bf", ro_csv;
  std::int64_t ro_n = 1000;
  int ro_trials = 10;
  std::uint64_t ro_seed = 1;
  auto* ro = app.add_subcommand("simulate-random-order",
                                "random-order ratio over permutations of one instance");
  auto* ro_in_opt = ro->add_option("--input", ro_input, "instance file");
  auto* ro_gen_opt =
      ro->add_option("--gen", ro_gen, "distribution spec JSON to sample one instance");
  ro->add_option("--n", ro_n, "items when using --gen");
  ro->add_option("--algo", ro_algo, "algorithm id");
  ro->add_option("--trials", ro_trials, "number of permutations");
  ro->add_option("--seed", ro_seed, "base seed");
  ro->add_option("--csv", ro_csv, "write per-trial rows to this file");
  ro_in_opt->excludes(ro_gen_opt);
  ro->callback([&] {
    Instance instance;
    if (!ro_input.empty()) {
      instance = load_instance(ro_input);
    } else if (!ro_gen.empty()) {
      instance = sample_instance(load_distribution(ro_gen), ro_n, derive_seed(ro_seed, 1'000'003));
    } else {
      throw CLI::ValidationError("simulate-random-order", "need --input or --gen");
    }
    AlgoSpec algo = build_algo(ro_algo, 0.5, 0, "ffd");
    TrialStats stats = estimate_arr(instance, algo, ro_trials, ro_seed);
    print_summary(algo, stats);
    maybe_write_csv(ro_csv, stats);
  });

  // ---- triplets ----
  std::int64_t tr_n = 60, tr_m = 30;
  int tr_trials = 1000;
  std::uint64_t tr_seed = 1;
  auto* tr = app.add_subcommand("triplets", "disjoint S-triplet count vs the exact expectation");
  tr->add_option("--n", tr_n, "total items")->required();
  tr->add_option("--m", tr_m, "small items")->required();
  tr->add_option("--trials", tr_trials, "number of permutations");
  tr->add_option("--seed", tr_seed, "base seed");
  tr->callback([&] {
    auto result = triplet_expectation_check(tr_n, tr_m, tr_trials, tr_seed);
    std::cout << "measured mean: " << result.measured_mean << " (se " << result.std_error << ")\n"
              << "exact form:    " << result.exact_form << "\n"
              << "mean >= form - 3se: "
              << (result.measured_mean >= result.exact_form - 3 * result.std_error ? "yes" : "no")
              << "\n";
  });

  // ---- vector ----
  int vec_dim = 2;
  std::vector<std::string> vec_dists;
  std::int64_t vec_n = 1000, vec_delta_inv = 0;
  int vec_trials = 5;
  std::uint64_t vec_seed = 1;
  double vec_epsilon = 0.5;
  std::string vec_offline = "ffd";
  auto* vec = app.add_subcommand("vector", "d-dimensional packing via max-coordinate rounding");
  vec->add_option("--dim", vec_dim, "dimensions")->required();
  vec->add_option("--dists", vec_dists, "spec JSON per dimension (one file = reused)")->required();
  vec->add_option("--n", vec_n, "items per trial")->required();
  vec->add_option("--trials", vec_trials, "number of trials");
  vec->add_option("--seed", vec_seed, "base seed");
  vec->add_option("--epsilon", vec_epsilon, "meta: accuracy parameter");
  vec->add_option("--delta-inv", vec_delta_inv, "meta: override 1/delta (power of two)");
  vec->add_option("--offline", vec_offline, "meta: offline algorithm A_alpha");
  vec->callback([&] {
    if (vec_dists.size() != 1 && vec_dists.size() != static_cast<std::size_t>(vec_dim))
      throw CLI::ValidationError("vector", "--dists needs 1 or --dim files");
    std::vector<DistributionSpec> specs;
    for (int j = 0; j < vec_dim; ++j)
      specs.push_back(
          load_distribution(vec_dists[vec_dists.size() == 1 ? 0 : static_cast<std::size_t>(j)]));

    MetaConfig config =
        MetaConfig::from_epsilon(vec_epsilon, OfflineAlgorithmId::parse(vec_offline));
    if (vec_delta_inv > 0) {
      config.inv_delta = vec_delta_inv;
      config.validate();
    }

    std::cout << "trial,algo_bins,denom_bins,denom_kind,ratio\n";
    for (int t = 0; t < vec_trials; ++t) {
      std::vector<VectorItem> items(static_cast<std::size_t>(vec_n));
      for (int j = 0; j < vec_dim; ++j) {
        Instance coords = sample_instance(
            specs[static_cast<std::size_t>(j)], vec_n,
            derive_seed(vec_seed,
                        static_cast<std::uint64_t>(t) * 1'000 + static_cast<std::uint64_t>(j)));
        for (int i = 0; i < vec_n; ++i) {
          items[static_cast<std::size_t>(i)].id = i;
          items[static_cast<std::size_t>(i)].coords.push_back(coords.item(i).size);
        }
      }
      VectorInstance instance(vec_dim, std::move(items));
      VectorPacking packing = pack_vector_meta(instance, config);
      auto violations = verify_vector_packing(instance, packing);
      if (!violations.empty()) throw std::runtime_error("internal: invalid vector packing");

      Units max_dim_weight = 0;
      for (int j = 0; j < vec_dim; ++j) {
        Units w = 0;
        for (const VectorItem& item : instance.items())
          w += item.coords[static_cast<std::size_t>(j)].units;
        max_dim_weight = std::max(max_dim_weight, w);
      }
      std::int64_t denom = ceil_div(max_dim_weight, kCapacity);
      std::cout << t << ',' << packing.bin_count() << ',' << denom << ",lower_bound,"
                << static_cast<double>(packing.bin_count()) / static_cast<double>(denom) << "\n";
    }
  });

  // ---- opt ----
  std::string opt_input;
  auto* opt = app.add_subcommand("opt", "exact optimum of a small instance");
  opt->add_option("--input", opt_input, "instance file")->required();
  opt->callback([&] {
    Instance instance = load_instance(opt_input);
    ExactResult result = opt_exact(instance);
    if (!verify_packing(instance, result.witness).empty())
      throw std::runtime_error("internal: invalid witness");
    std::cout << "opt: " << result.bins << " bins (lower bound " << lower_bound(instance)
              << ")\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
