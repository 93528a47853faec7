#include "binpack/matching.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace binpack {

MatchingResult upright_match_greedy(std::vector<SignedPoint> points) {
  std::sort(points.begin(), points.end(),
            [](const SignedPoint& a, const SignedPoint& b) { return a.time < b.time; });

  MatchingResult result;
  std::set<std::pair<Units, std::int64_t>> open;  // (capacity, arrival time)
  for (const SignedPoint& p : points) {
    if (p.sign == PointSign::Plus) {
      open.insert({p.level, p.time});
    } else {
      auto it = open.lower_bound({p.level, std::numeric_limits<std::int64_t>::min()});
      if (it != open.end()) {
        result.pairs.emplace_back(it->second, p.time);
        open.erase(it);
      }
    }
  }
  result.unmatched = static_cast<std::int64_t>(points.size()) - 2 * result.size();
  return result;
}

std::int64_t upright_match_oracle(const std::vector<SignedPoint>& points) {
  if (points.size() > 60) throw std::invalid_argument("matching oracle: more than 60 points");

  std::vector<SignedPoint> plus, minus;
  for (const SignedPoint& p : points)
    (p.sign == PointSign::Plus ? plus : minus).push_back(p);

  const int np = static_cast<int>(plus.size());
  const int nm = static_cast<int>(minus.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nm; ++j)
      if (plus[static_cast<std::size_t>(i)].time <= minus[static_cast<std::size_t>(j)].time &&
          plus[static_cast<std::size_t>(i)].level >= minus[static_cast<std::size_t>(j)].level)
        adj[static_cast<std::size_t>(i)].push_back(j);

  std::vector<int> match_minus(static_cast<std::size_t>(nm), -1);
  std::vector<char> visited;

  auto augment = [&](auto&& self, int u) -> bool {
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (visited[static_cast<std::size_t>(v)]) continue;
      visited[static_cast<std::size_t>(v)] = 1;
      if (match_minus[static_cast<std::size_t>(v)] < 0 ||
          self(self, match_minus[static_cast<std::size_t>(v)])) {
        match_minus[static_cast<std::size_t>(v)] = u;
        return true;
      }
    }
    return false;
  };

  std::int64_t size = 0;
  for (int u = 0; u < np; ++u) {
    visited.assign(static_cast<std::size_t>(nm), 0);
    if (augment(augment, u)) ++size;
  }
  return size;
}

void ModifiedBestFitPacker::accept(const Item& item) {
  const Units limit = kCapacity - item.size.units;
  auto it = open_.lower_bound({limit + 1, std::numeric_limits<int>::min()});
  int serial;
  if (it == open_.begin()) {
    serial = ledger_.open();
  } else {
    --it;
    serial = -it->second;
    open_.erase(it);
  }
  ledger_.place(serial, item);
  if (2 * item.size.units > kCapacity)  // size > 1/2: the bin stays open
    open_.insert({ledger_.load(serial), -serial});
}

Packing modified_best_fit(const Instance& instance) {
  ModifiedBestFitPacker p;
  for (const Item& item : instance.items()) p.accept(item);
  return p.finish();
}

std::vector<SignedPoint> mbf_as_matching(const Instance& instance) {
  std::vector<SignedPoint> points;
  points.reserve(static_cast<std::size_t>(instance.n()));
  std::int64_t time = 0;
  for (const Item& item : instance.items()) {
    const Units s = item.size.units;
    if (3 * s <= kCapacity)
      throw std::invalid_argument("mbf_as_matching: item of size <= 1/3 present");
    if (2 * s <= kCapacity)
      points.push_back({time, s, PointSign::Minus});
    else
      points.push_back({time, kCapacity - s, PointSign::Plus});
    ++time;
  }
  return points;
}

std::int64_t count_plus(const std::vector<SignedPoint>& points) {
  std::int64_t c = 0;
  for (const SignedPoint& p : points)
    if (p.sign == PointSign::Plus) ++c;
  return c;
}

std::int64_t count_unmatched_minus(const std::vector<SignedPoint>& points,
                                   const MatchingResult& result) {
  std::int64_t minus = static_cast<std::int64_t>(points.size()) - count_plus(points);
  return minus - result.size();
}

}  // namespace binpack
