#include <doctest.h>

#include <set>
#include <thread>

#include "icd/generator.hpp"
#include "icd/kernels.hpp"
#include "icd/objectives.hpp"
#include "oracles.hpp"

using namespace icd;

namespace {

std::vector<PreparedSignal> mixed_set(std::uint64_t seed, int per_class = 4) {
  std::vector<FeatureSignal> all;
  std::uint64_t s = seed;
  for (const auto& c : builtin_conditions()) {
    auto g = generate(c, per_class, ++s);
    all.insert(all.end(), g.begin(), g.end());
  }
  return prepare_all(all);
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("sliding-window kernel agrees with the reference fold") {
  const auto d = expand_domains();
  SplitMix64 rng(1234);
  for (int t = 0; t < 300; ++t) {
    const PreparedSignal s(oracle::random_signal(rng, 80));
    for (int j = 0; j < 20; ++j) {
      const Params p = to_params(oracle::random_vector(rng, d), d);
      REQUIRE(reaches_therapy_fast(s, p) == reachability(run(s, p)));
    }
  }
  const auto gen = mixed_set(3);
  for (const auto& s : gen)
    for (int j = 0; j < 20; ++j) {
      const Params p = to_params(oracle::random_vector(rng, d), d);
      REQUIRE(reaches_therapy_fast(s, p) == reachability(run(s, p)));
    }
}

TEST_CASE("flip counts: fast, reference, serial and parallel agree") {
  const auto d = expand_domains();
  const TrainingSet set(mixed_set(7), d);
  SplitMix64 rng(3);
  std::vector<ParamVector> cands;
  for (int i = 0; i < 300; ++i) cands.push_back(oracle::random_vector(rng, d));
  const auto serial = evaluate_serial(set, d, cands);
  const auto parallel = evaluate_parallel(set, d, cands);
  CHECK(serial == parallel);
  for (std::size_t i = 0; i < 40; ++i) {
    const Params p = to_params(cands[i], d);
    CHECK(count_flips(set, p) == count_flips_reference(set, p));
    CHECK(set.as_effectiveness(serial[i]) == effectiveness(cands[i], d, set.signals(), set.baseline()));
  }
  CHECK(count_flips(set, Params{}) == 0);
}

TEST_CASE("box_vector enumerates every vector of a box once") {
  const auto d = expand_domains();
  const Box b = restricted_box(2, d, parse_free_params("VF_th,VFdur,stb"));
  const auto n = box_size(b);
  std::set<ParamVector> seen;
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto v = box_vector(b, i);
    for (std::size_t p = 0; p < kParamCount; ++p) REQUIRE(b[p].contains(v.idx[p]));
    seen.insert(v);
  }
  CHECK(seen.size() == n);
  CHECK(n == 5ull * 3 * 5);
}

TEST_CASE("shell search: serial and parallel pick the same witness") {
  const auto d = expand_domains();
  const TrainingSet set(mixed_set(11, 3), d);
  const FreeMask free = parse_free_params("VF_th,VT_th,VTdur");
  for (int s = 0; s <= 4; ++s) {
    const Box b = restricted_box(s, d, free);
    const auto a = best_in_shell_serial(set, d, b, s);
    const auto c = best_in_shell_parallel(set, d, b, s);
    CHECK(a.shell_size == c.shell_size);
    CHECK(a.flips == c.flips);
    CHECK(a.witness == c.witness);

    // Oracle: scan the box directly.
    std::uint64_t count = 0;
    std::optional<std::pair<std::uint32_t, ParamVector>> best;
    for (const auto& v : oracle::all_vectors(d, free)) {
      if (distance(v, d) != s) continue;
      ++count;
      std::uint32_t flips = 0;
      for (std::size_t j = 0; j < set.size(); ++j)
        flips += oracle::naive_reach(set.signals()[j].signal, to_params(v, d)) != set.baseline()[j] ? 1 : 0;
      if (!best || flips > best->first || (flips == best->first && v < best->second)) best = {flips, v};
    }
    CHECK(a.shell_size == count);
    REQUIRE(a.witness);
    CHECK(a.flips == best->first);
    CHECK(*a.witness == best->second);
  }
}

TEST_CASE("effectiveness cache under concurrent inserts") {
  EffectivenessCache cache;
  const auto d = expand_domains();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      SplitMix64 rng(42);
      for (int i = 0; i < 500; ++i) {
        const auto v = oracle::random_vector(rng, d);
        cache.insert(v, static_cast<std::uint32_t>(v.idx[0]));
      }
      (void)t;
    });
  for (auto& th : threads) th.join();
  SplitMix64 rng(42);
  std::set<ParamVector> distinct;
  for (int i = 0; i < 500; ++i) {
    const auto v = oracle::random_vector(rng, d);
    distinct.insert(v);
    REQUIRE(cache.find(v) == static_cast<std::uint32_t>(v.idx[0]));
  }
  CHECK(cache.size() == distinct.size());
  CHECK_FALSE(cache.find(ParamVector{}));
}

}
