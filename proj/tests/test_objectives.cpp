#include <doctest.h>

#include <sstream>

#include "icd/generator.hpp"
#include "icd/objectives.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace icd;

namespace {

TherapySignal bits(std::initializer_list<int> on, std::size_t n = 8) {
  TherapySignal t;
  t.bits.assign(n, false);
  for (int k : on) t.bits[static_cast<std::size_t>(k)] = true;
  return t;
}

}  // namespace

TEST_SUITE("objectives") {

TEST_CASE("effectiveness counts changed reachability, not changed timing") {
  // s1 loses one of two episodes, s2 loses its only one, s3 gains one, s4
  // is merely delayed.
  const std::vector<TherapySignal> nominal{bits({2, 5}), bits({4}), bits({}), bits({3})};
  const std::vector<TherapySignal> attacked{bits({5}), bits({}), bits({6}), bits({6})};
  CHECK(effectiveness(nominal, attacked) == Rational(1, 2));
  CHECK(effectiveness(nominal, nominal) == Rational(0));
  CHECK(reachability(bits({7})));
  CHECK_FALSE(reachability(bits({})));
}

TEST_CASE("effectiveness at the nominal vector is zero") {
  const auto d = expand_domains();
  const auto signals = prepare_all(generate(builtin_condition("monomorphic-VT"), 10, 4));
  const auto base = baseline_reach(signals, d);
  CHECK(effectiveness(ParamVector::nominal(d), d, signals, base) == Rational(0));
}

TEST_CASE("pareto_filter keeps exactly the non-dominated points") {
  const auto d = expand_domains();
  SplitMix64 rng(8);
  for (int round = 0; round < 200; ++round) {
    std::vector<FrontPoint> cands;
    const int n = static_cast<int>(rng.uniform_int(1, 30));
    for (int i = 0; i < n; ++i) {
      ParamVector w = oracle::random_vector(rng, d);
      cands.push_back({static_cast<int>(rng.uniform_int(0, 6)), Rational(rng.uniform_int(0, 5), 5), w});
    }
    const auto front = pareto_filter(cands);

    std::vector<FrontPoint> expect;
    for (const auto& c : cands) {
      bool dominated = false;
      for (const auto& o : cands) dominated = dominated || oracle::dominates(o.distance, o.effectiveness, c.distance, c.effectiveness);
      if (dominated) continue;
      bool replaced = false;
      for (auto& e : expect)
        if (e.distance == c.distance && e.effectiveness == c.effectiveness) {
          if (c.witness < e.witness) e.witness = c.witness;
          replaced = true;
        }
      if (!replaced) expect.push_back(c);
    }
    std::sort(expect.begin(), expect.end(), [](const FrontPoint& a, const FrontPoint& b) { return a.distance < b.distance; });
    REQUIRE(front.points == expect);
  }
}

TEST_CASE("area under the front") {
  ParetoFront f;
  const ParamVector w{};
  f.points = {{0, Rational(0), w}, {2, Rational(1, 2), w}, {5, Rational(1), w}};
  // Unit-width sum of the best value reachable within each distance.
  Rational expect(0);
  for (int s = 0; s < 10; ++s) expect += s >= 5 ? Rational(1) : s >= 2 ? Rational(1, 2) : Rational(0);
  CHECK(auc(f, 10) == expect);
  CHECK(auc(f, 10) == Rational(13, 2));

  ParetoFront late;
  late.points = {{3, Rational(1, 4), w}};
  CHECK(auc(late, 4) == Rational(1, 4));
}

TEST_CASE("validation score on the training set itself is zero") {
  const auto d = expand_domains();
  const auto signals = prepare_all(generate(builtin_condition("monomorphic-VT"), 6, 2));
  ParetoFront f;
  f.points.push_back({0, Rational(0), ParamVector::nominal(d)});
  auto v = ParamVector::nominal(d);
  v[ParamId::VtDur] = d[ParamId::VtDur].size();
  v[ParamId::VfTh] = d[ParamId::VfTh].size();
  f.points.push_back({distance(v, d), effectiveness(v, d, signals, baseline_reach(signals, d)), v});
  CHECK(validation_score(f, d, signals, signals) == Rational(0));
}

TEST_CASE("front CSV round trip") {
  const auto d = expand_domains();
  ParetoFront f;
  auto v = ParamVector::nominal(d);
  f.points.push_back({0, Rational(0), v});
  v[ParamId::NsrCor] = 27;
  v[ParamId::VtDur] = 22;
  f.points.push_back({distance(v, d), Rational(2, 3), v});
  std::stringstream ss;
  write_front_csv(ss, f, d);
  const std::string text = ss.str();
  CHECK(text.rfind("distance,effectiveness,VF_th,VT_th,AFib_th,VFdur,VTdur,NSRcor_th,stb\n", 0) == 0);
  CHECK(text.find("0.96") != std::string::npos);
  const auto rows = read_front_csv(ss, d);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].witness == v);
  CHECK(rows[1].distance == distance(v, d));
  CHECK(rows[1].effectiveness == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("format_decimal prints the shortest round-trip form") {
  CHECK(format_decimal(0.94) == "0.94");
  CHECK(format_decimal(2.5) == "2.5");
  CHECK(format_decimal(200) == "200");
}

}
