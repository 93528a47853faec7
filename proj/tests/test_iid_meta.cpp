#include <doctest.h>

#include "binpack/exact.hpp"
#include "binpack/iid_meta.hpp"
#include "test_util.hpp"

using namespace binpack;
using namespace binpack::testutil;

namespace {

MetaConfig config_for(std::int64_t inv_delta,
                      MetaConfig::SlotScope scope = MetaConfig::SlotScope::Global) {
  MetaConfig config;
  config.inv_delta = inv_delta;
  config.slot_scope = scope;
  return config;
}

std::int64_t small_overflow_bins(const MetaCounters& counters) {
  return counters.overflow_small_bins;
}

}  // namespace

TEST_SUITE_BEGIN("iid_meta");

TEST_CASE("config derivation from epsilon") {
  MetaConfig c = MetaConfig::from_epsilon(0.5);
  CHECK(c.inv_delta == 32);  // largest power of 1/2 strictly below 1/16
  CHECK(MetaConfig::from_epsilon(0.9).inv_delta == 16);
  CHECK_THROWS_AS(MetaConfig::from_epsilon(0.0), std::invalid_argument);
  CHECK_THROWS_AS(MetaConfig::from_epsilon(1.0), std::invalid_argument);

  MetaConfig bad;
  bad.inv_delta = 12;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("stage plans") {
  auto sizes = [](const StagePlan& p) { return p.sizes; };
  CHECK(sizes(plan_stages(16, config_for(4))) ==
        std::vector<std::int64_t>{1, 1, 2, 4, 8});
  CHECK(sizes(plan_stages(64, config_for(4))) ==
        std::vector<std::int64_t>{4, 4, 8, 16, 32});
  CHECK(sizes(plan_stages(100, config_for(4))) ==
        std::vector<std::int64_t>{6, 6, 12, 25, 51});
  CHECK_THROWS_AS(plan_stages(15, config_for(4)), std::invalid_argument);

  for (std::int64_t n : {16, 17, 100, 1023, 65536}) {
    auto p = plan_stages(n, config_for(4));
    std::int64_t sum = 0;
    for (auto s : p.sizes) sum += s;
    CHECK(sum == n);
  }
}

TEST_CASE("proxy replacement slots") {
  ProxyState state;
  state.add(500'000'000, 0);
  state.add(600'000'000, 1);
  state.add(800'000'000, 2);

  auto hit = state.replace(550'000'000);  // smallest proxy >= 0.55 is 0.6
  REQUIRE(hit.has_value());
  CHECK(hit->proxy_size == 600'000'000);
  CHECK(hit->bin == 1);
  CHECK(state.remaining() == 2);

  CHECK(!state.replace(900'000'000).has_value());  // nothing >= 0.9 anymore
  auto exact_fit = state.replace(800'000'000);
  REQUIRE(exact_fit.has_value());
  CHECK(exact_fit->proxy_size == 800'000'000);
}

TEST_CASE("sslot cursor only advances") {
  SSlotSet slots;
  slots.add(0, 500'000'000);
  slots.add(1, 400'000'000);
  CHECK(slots.place(300'000'000) == 0);
  CHECK(slots.place(300'000'000) == 1);  // 0.3 no longer fits slot 0, cursor moves
  CHECK(slots.place(150'000'000) == -1); // slot 1 holds 0.3, 0.15 overflows it? no: 0.45 <= 0.4 fails
  slots.add(2, kCapacity);
  CHECK(slots.place(100'000'000) == 2);  // slot 0's leftover space is never revisited
}

TEST_CASE("case 1: few large items means pure next fit") {
  // 1600 items of size 0.04: 25 fill a bin exactly, so 64 bins
  std::vector<Units> sizes(1600, 40'000'000);
  Instance instance = Instance::from_units(sizes);
  MetaConfig config = config_for(8);
  Packing packing = alg_known_n(instance, 1600, config);
  CHECK(packing.bin_count() == 64);
  CHECK(same_bins(packing, next_fit(instance)));
  CHECK(verify_packing(instance, packing).empty());
}

TEST_CASE("case 1 equivalence on random small-item streams") {
  Rng rng(301);
  for (int t = 0; t < 30; ++t) {
    int n = 64 + static_cast<int>(rng.next_below(400));
    Instance instance = random_instance(rng, n, 1, kCapacity / 10);  // all below delta
    MetaConfig config = config_for(8);
    CHECK(same_bins(alg_known_n(instance, n, config), next_fit(instance)));
  }
}

TEST_CASE("alg_known_n rejects a miscounted stream") {
  Instance instance = Instance::from_units({500'000'000, 500'000'000});
  CHECK_THROWS_AS(alg_known_n(instance, 3, config_for(4)), std::invalid_argument);
  CHECK_THROWS_AS(alg_known_n(instance, 16, config_for(4)), std::invalid_argument);
}

TEST_CASE("chunk packings are built lazily") {
  MetaConfig config = config_for(4);  // eta = 4
  std::vector<Item> prefix;
  for (int i = 0; i < 8; ++i) prefix.push_back({i, Size{400'000'000}});

  {
    SSlotSet slots;
    auto stats = pack_stage_chunked({}, prefix, config, slots);
    CHECK(stats.proxy_packings_built == 0);
  }
  {
    SSlotSet slots;
    std::vector<Item> stage = {{8, Size{400'000'000}},
                               {9, Size{400'000'000}},
                               {10, Size{400'000'000}}};
    auto stats = pack_stage_chunked(stage, prefix, config, slots);
    CHECK(stats.proxy_packings_built == 2);  // items 1-2 hit chunk 1, item 3 chunk 2
  }
  {
    SSlotSet slots;
    std::vector<Item> stage;
    for (int i = 0; i < 8; ++i) stage.push_back({8 + i, Size{400'000'000}});
    auto stats = pack_stage_chunked(stage, prefix, config, slots);
    CHECK(stats.proxy_packings_built == 4);
  }
}

TEST_CASE("imp_alg basics") {
  MetaConfig config = config_for(8);
  CHECK(imp_alg(Instance{}, config).bin_count() == 0);

  // streams of at most 1/delta items never leave the sampling stage
  Rng rng(307);
  for (int t = 0; t < 20; ++t) {
    Instance instance = mixed_instance(rng, 1 + static_cast<int>(rng.next_below(8)), t);
    CHECK(same_bins(imp_alg(instance, config), next_fit(instance)));
  }
}

TEST_CASE("imp_alg doubling schedule") {
  MetaConfig config = config_for(8);  // n0 = 512
  Instance instance = sample_instance(ContinuousUniform{0.0, 1.0}, 3000, 55);
  MetaPacker packer = MetaPacker::unknown_n(config);
  for (const Item& item : instance.items()) packer.accept(item);
  CHECK(packer.counters().super_stage_sizes ==
        std::vector<std::int64_t>{512, 512, 1024, 952});
  CHECK(verify_packing(instance, packer.finish()).empty());
}

TEST_CASE("meta packings are valid across deltas and distributions") {
  Rng rng(311);
  for (std::int64_t inv : {4, 8, 16}) {
    for (int t = 0; t < 12; ++t) {
      int n = 1 + static_cast<int>(rng.next_below(800));
      Instance instance = mixed_instance(rng, n, t);
      MetaConfig config = config_for(inv);
      Packing packing = imp_alg(instance, config);
      CHECK(verify_packing(instance, packing).empty());
      if (n >= inv * inv) {
        Packing fixed = alg_known_n(instance, n, config);
        CHECK(verify_packing(instance, fixed).empty());
      }
    }
  }
}

TEST_CASE("online contract: prefix replay matches") {
  Rng rng(313);
  for (int t = 0; t < 15; ++t) {
    int n = 600 + static_cast<int>(rng.next_below(600));
    Instance instance = mixed_instance(rng, n, t);
    MetaConfig config = config_for(8);

    MetaPacker full = MetaPacker::unknown_n(config);
    for (const Item& item : instance.items()) full.accept(item);

    int cut = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    MetaPacker partial = MetaPacker::unknown_n(config);
    for (int i = 0; i < cut; ++i) partial.accept(instance.item(i));

    for (int i = 0; i < cut; ++i)
      CHECK(partial.trace()[static_cast<std::size_t>(i)] ==
            full.trace()[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("global slots never use more small-only bins than per-stage slots") {
  Rng rng(317);
  for (int t = 0; t < 25; ++t) {
    int n = 300 + static_cast<int>(rng.next_below(2000));
    Instance instance = mixed_instance(rng, n, t);

    MetaPacker global = MetaPacker::unknown_n(config_for(8, MetaConfig::SlotScope::Global));
    MetaPacker fresh = MetaPacker::unknown_n(config_for(8, MetaConfig::SlotScope::PerStage));
    for (const Item& item : instance.items()) {
      global.accept(item);
      fresh.accept(item);
    }
    CHECK(small_overflow_bins(global.counters()) <= small_overflow_bins(fresh.counters()));
    CHECK(verify_packing(instance, global.finish()).empty());
    CHECK(verify_packing(instance, fresh.finish()).empty());
  }
}

TEST_CASE("bin provenance accounting") {
  Rng rng(331);
  for (int t = 0; t < 20; ++t) {
    int n = 200 + static_cast<int>(rng.next_below(1500));
    Instance instance = mixed_instance(rng, n, t);
    MetaPacker packer = MetaPacker::unknown_n(config_for(8));
    for (const Item& item : instance.items()) packer.accept(item);
    const MetaCounters& c = packer.counters();
    CHECK(packer.finish().bin_count() <=
          c.nf_bins + c.proxy_bins_built + c.large_miss_bins + c.overflow_small_bins);
  }
}

TEST_SUITE_END();
