#include <doctest.h>

#include <numeric>

#include "binpack/heuristics.hpp"
#include "binpack/matching.hpp"
#include "test_util.hpp"

using namespace binpack;
using namespace binpack::testutil;

namespace {

std::vector<SignedPoint> random_points(Rng& rng, int n) {
  std::vector<SignedPoint> points;
  for (int i = 0; i < n; ++i)
    points.push_back({i, 1 + static_cast<Units>(rng.next_below(kCapacity)),
                      rng.next_below(2) ? PointSign::Plus : PointSign::Minus});
  return points;
}

// The Lemma-8 shape: k plus points with levels a_i, k minus points with
// paired levels a_{k+i} <= a_i, x-coordinates randomly permuted over [2k].
// The level sequence is a fixed function of k, as the lemma fixes the values
// and randomizes only the permutation.
std::vector<SignedPoint> lm_points(int k, const std::vector<std::int64_t>& perm) {
  std::vector<SignedPoint> points;
  points.reserve(static_cast<std::size_t>(2 * k));
  Rng levels(derive_seed(775, static_cast<std::uint64_t>(k)));
  for (int i = 0; i < k; ++i) {
    Units a = 380'000'000 + static_cast<Units>(levels.next_below(120'000'000));
    points.push_back({perm[static_cast<std::size_t>(i)], a, PointSign::Plus});
    points.push_back({perm[static_cast<std::size_t>(k + i)], a, PointSign::Minus});
  }
  return points;
}

std::vector<std::int64_t> random_perm(Rng& rng, int size) {
  std::vector<std::int64_t> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 1);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.next_below(i)]);
  return perm;
}

}  // namespace

TEST_SUITE_BEGIN("matching");

TEST_CASE("greedy sweep picks the tightest open plus") {
  std::vector<SignedPoint> points = {{1, 400'000'000, PointSign::Plus},
                                     {2, 450'000'000, PointSign::Plus},
                                     {3, 420'000'000, PointSign::Minus}};
  auto result = upright_match_greedy(points);
  REQUIRE(result.size() == 1);
  CHECK(result.pairs[0] == std::pair<std::int64_t, std::int64_t>{2, 3});
  CHECK(result.unmatched == 1);
  CHECK(upright_match_oracle(points) == 1);
}

TEST_CASE("greedy edge cases") {
  std::vector<SignedPoint> no_minus = {{1, 10, PointSign::Plus}, {2, 20, PointSign::Plus}};
  auto r = upright_match_greedy(no_minus);
  CHECK(r.size() == 0);
  CHECK(r.unmatched == 2);

  // capacity >= level holds with equality
  std::vector<SignedPoint> equal = {{1, 300'000'000, PointSign::Plus},
                                    {2, 300'000'000, PointSign::Minus}};
  CHECK(upright_match_greedy(equal).unmatched == 0);

  CHECK(upright_match_greedy({}).size() == 0);
  CHECK(upright_match_oracle({}) == 0);
}

TEST_CASE("oracle saturates when every edge exists") {
  std::vector<SignedPoint> points;
  for (int i = 0; i < 5; ++i) points.push_back({i, kCapacity, PointSign::Plus});
  for (int i = 5; i < 8; ++i) points.push_back({i, 1 + i, PointSign::Minus});
  CHECK(upright_match_oracle(points) == 3);
  CHECK(upright_match_greedy(points).size() == 3);

  std::vector<SignedPoint> too_big(61, SignedPoint{});
  for (int i = 0; i < 61; ++i) too_big[static_cast<std::size_t>(i)].time = i;
  CHECK_THROWS_AS(upright_match_oracle(too_big), std::invalid_argument);
}

TEST_CASE("greedy matching is maximum") {
  Rng rng(211);
  for (int t = 0; t < 300; ++t) {
    auto points = random_points(rng, 1 + static_cast<int>(rng.next_below(40)));
    CHECK(upright_match_greedy(points).size() == upright_match_oracle(points));
  }
}

TEST_CASE("modified best fit closes bins on items <= 1/2") {
  Instance inst = Instance::from_units({600'000'000, 300'000'000, 700'000'000, 350'000'000});
  auto p = modified_best_fit(inst);
  REQUIRE(p.bin_count() == 3);
  CHECK(p.bins[0].item_ids == std::vector<int>{0, 1});
  CHECK(p.bins[1].item_ids == std::vector<int>{2});
  CHECK(p.bins[2].item_ids == std::vector<int>{3});

  // all items > 1/2: the closing rule never fires, MBF == BF
  Instance alllarge = Instance::from_units({600'000'000, 700'000'000, 550'000'000});
  CHECK(same_bins(modified_best_fit(alllarge), best_fit(alllarge)));

  CHECK(modified_best_fit(Instance::from_units({400'000'000})).bin_count() == 1);
}

TEST_CASE("mbf dominates bf") {
  Rng rng(223);
  for (int t = 0; t < 2000; ++t) {
    Instance instance = mixed_instance(rng, 1 + static_cast<int>(rng.next_below(80)), t);
    CHECK(best_fit(instance).bin_count() <= modified_best_fit(instance).bin_count());
    CHECK(verify_packing(instance, modified_best_fit(instance)).empty());
  }
}

TEST_CASE("mbf reduction on pinned instances") {
  {
    auto points = mbf_as_matching(Instance::from_units({600'000'000, 400'000'000}));
    REQUIRE(points.size() == 2);
    CHECK(points[0].sign == PointSign::Plus);
    CHECK(points[0].level == 400'000'000);
    CHECK(points[1].sign == PointSign::Minus);
    auto result = upright_match_greedy(points);
    CHECK(count_plus(points) + count_unmatched_minus(points, result) == 1);
    CHECK(modified_best_fit(Instance::from_units({600'000'000, 400'000'000})).bin_count() == 1);
  }
  {
    auto points = mbf_as_matching(Instance::from_units({400'000'000, 600'000'000}));
    auto result = upright_match_greedy(points);
    CHECK(count_plus(points) + count_unmatched_minus(points, result) == 2);
  }
  {
    auto points = mbf_as_matching(Instance::from_units({550'000'000, 520'000'000}));
    CHECK(count_plus(points) == 2);
    auto result = upright_match_greedy(points);
    CHECK(count_plus(points) + count_unmatched_minus(points, result) == 2);
  }
  CHECK_THROWS_AS(mbf_as_matching(Instance::from_units({333'333'333, 600'000'000})),
                  std::invalid_argument);
}

TEST_CASE("mbf bin count equals the matching reduction") {
  Rng rng(227);
  for (int t = 0; t < 400; ++t) {
    Instance instance = random_instance(rng, 1 + static_cast<int>(rng.next_below(60)),
                                        kCapacity / 3 + 1, kCapacity);
    auto points = mbf_as_matching(instance);
    auto result = upright_match_greedy(points);
    CHECK(modified_best_fit(instance).bin_count() ==
          count_plus(points) + count_unmatched_minus(points, result));
  }
}

TEST_CASE("mirroring the time axis is the reversed permutation") {
  Rng rng(229);
  for (int t = 0; t < 60; ++t) {
    int k = 2 + static_cast<int>(rng.next_below(20));
    auto perm = random_perm(rng, 2 * k);
    auto points = lm_points(k, perm);

    std::vector<SignedPoint> mirrored = points;
    for (auto& p : mirrored) p.time = -p.time;

    std::vector<std::int64_t> reversed(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) reversed[i] = 2 * k + 1 - perm[i];
    auto reversed_points = lm_points(k, reversed);

    CHECK(upright_match_greedy(mirrored).size() == upright_match_greedy(reversed_points).size());
  }
}

TEST_CASE("unmatched points grow sublinearly in the pair count") {
  const int trials = 100;
  auto mean_u_over_k = [&](int k) {
    double acc = 0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(4242, static_cast<std::uint64_t>(k * 1000 + t)));
      auto perm = random_perm(rng, 2 * k);
      auto points = lm_points(k, perm);
      acc += static_cast<double>(upright_match_greedy(points).unmatched) / k;
    }
    return acc / trials;
  };
  double at_512 = mean_u_over_k(512);
  double at_8192 = mean_u_over_k(8192);
  CHECK(at_8192 < 0.5 * at_512);
}

TEST_SUITE_END();
