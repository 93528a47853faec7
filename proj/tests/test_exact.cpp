#include <doctest.h>

#include "binpack/distributions.hpp"
#include "binpack/exact.hpp"
#include "binpack/heuristics.hpp"
#include "test_util.hpp"

using namespace binpack;
using namespace binpack::testutil;

TEST_SUITE_BEGIN("exact");

TEST_CASE("lower bound") {
  CHECK(lower_bound(Instance::from_units({600'000'000, 600'000'000, 600'000'000})) == 3);
  CHECK(lower_bound(Instance::from_units({500'000'000, 500'000'000, 500'000'000})) == 2);
  CHECK(lower_bound(Instance::from_units({900'000'000, 200'000'000})) == 2);
  CHECK(lower_bound(Instance{}) == 0);
}

TEST_CASE("optimum on pinned instances") {
  CHECK(opt_exact(Instance::from_units({500'000'000, 500'000'000, 500'000'000, 500'000'000}))
            .bins == 2);

  auto r = opt_exact(Instance::from_units({600'000'000, 600'000'000, 400'000'000, 400'000'000}));
  CHECK(r.bins == 2);
  CHECK(verify_packing(
            Instance::from_units({600'000'000, 600'000'000, 400'000'000, 400'000'000}), r.witness)
            .empty());

  CHECK(opt_exact(Instance::from_units({700'000'000, 700'000'000, 700'000'000})).bins == 3);
  CHECK(opt_exact(Instance{}).bins == 0);
}

TEST_CASE("matches exhaustive enumeration up to n = 8") {
  Rng rng(101);
  for (int t = 0; t < 300; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(8));
    Instance instance = mixed_instance(rng, n, t);
    auto expected = exhaustive_opt(instance);
    auto result = opt_exact(instance);
    CHECK(result.bins == expected);
    CHECK(verify_packing(instance, result.witness).empty());
    CHECK(result.witness.bin_count() == result.bins);
  }
}

TEST_CASE("both exact paths agree") {
  // few distinct sizes so the configuration search applies; small n so the
  // branch-and-bound applies too
  Rng rng(103);
  for (int t = 0; t < 120; ++t) {
    std::vector<Units> pool = {250'000'000, 333'333'333, 500'000'000, 170'000'000};
    std::vector<Units> sizes;
    int n = 6 + static_cast<int>(rng.next_below(10));
    for (int i = 0; i < n; ++i) sizes.push_back(pool[rng.next_below(pool.size())]);
    Instance instance = Instance::from_units(sizes);

    ExactConfig force_bb;
    force_bb.max_distinct = 0;  // push the dispatch to branch-and-bound
    auto via_bb = opt_exact(instance, force_bb);
    auto via_config = opt_exact(instance);
    CHECK(via_bb.bins == via_config.bins);
    CHECK(verify_packing(instance, via_bb.witness).empty());
    CHECK(verify_packing(instance, via_config.witness).empty());
  }
}

TEST_CASE("lower bound <= optimum <= FFD") {
  Rng rng(107);
  for (int t = 0; t < 150; ++t) {
    int n = 1 + static_cast<int>(rng.next_below(14));
    Instance instance = mixed_instance(rng, n, t);
    auto opt = opt_exact(instance).bins;
    CHECK(lower_bound(instance) <= opt);
    CHECK(opt <= sorted_variant(OnlineRule::FF, instance).bin_count());
  }
}

TEST_CASE("optimum is permutation invariant") {
  Rng rng(109);
  for (int t = 0; t < 40; ++t) {
    Instance instance = mixed_instance(rng, 10, t);
    auto opt = opt_exact(instance).bins;
    for (int p = 0; p < 3; ++p) {
      Instance shuffled = random_permutation(instance, derive_seed(1234, static_cast<std::uint64_t>(p)));
      CHECK(opt_exact(shuffled).bins == opt);
    }
  }
}

TEST_CASE("configuration search handles large n with two sizes") {
  // 60k quarters + 40k near-thirds: the acceptance-scale denominator shape
  std::vector<Units> sizes;
  for (int i = 0; i < 60'000; ++i) sizes.push_back(250'000'000);
  for (int i = 0; i < 40'000; ++i) sizes.push_back(333'333'333);
  Instance instance = Instance::from_units(sizes);
  auto result = opt_exact(instance);
  CHECK(result.bins == lower_bound(instance));
  CHECK(result.bins == 28'334);
  CHECK(verify_packing(instance, result.witness).empty());
}

TEST_CASE("fails loudly instead of guessing") {
  ExactConfig tiny;
  tiny.max_items = 4;
  tiny.max_distinct = 2;
  Rng rng(113);
  Instance big = random_instance(rng, 40, 1, kCapacity);
  CHECK_THROWS_AS(opt_exact(big, tiny), ExactError);

  ExactConfig starved;
  starved.node_budget = 3;
  Instance hard = random_instance(rng, 20, 300'000'000, 900'000'000);
  CHECK_THROWS_AS(opt_exact(hard, starved), ExactError);
}

TEST_SUITE_END();
