#include <doctest.h>

#include "icd/error.hpp"
#include "icd/generator.hpp"
#include "icd/synthesis.hpp"
#include "oracles.hpp"

using namespace icd;

namespace {

ParameterDomain small_domain() {
  return domains_from_json(nlohmann::json::parse(R"({"parameters": {
      "VF_th": {"nominal": 200, "values": ["185:5:215"]},
      "VTdur": {"nominal": 2.5, "values": [1, 2, 2.5, 3, 5, 20, 30]},
      "NSRcor_th": {"nominal": 0.94, "values": ["0.90:0.01:0.96"]}}})"));
}

std::vector<PreparedSignal> mixed(std::uint64_t seed) {
  std::vector<FeatureSignal> all;
  for (const char* name : {"monomorphic-VT", "SVT-tracking", "AFib-conducted"}) {
    auto g = generate(builtin_condition(name), 4, seed++);
    all.insert(all.end(), g.begin(), g.end());
  }
  return prepare_all(all);
}

}  // namespace

TEST_SUITE("synthesis") {

TEST_CASE("exact front equals brute force over the free box") {
  const auto d = small_domain();
  const TrainingSet train(mixed(21), d);
  SynthesisConfig cfg;
  cfg.free_params = parse_free_params("VF_th,VTdur,NSRcor_th");
  const auto res = synthesize_exact(train, d, cfg);

  std::vector<std::pair<ParamVector, Rational>> table;
  for (const auto& v : oracle::all_vectors(d, cfg.free_params)) {
    int flips = 0;
    for (std::size_t j = 0; j < train.size(); ++j)
      flips += oracle::naive_reach(train.signals()[j].signal, to_params(v, d)) != train.baseline()[j];
    table.push_back({v, Rational(flips, static_cast<std::int64_t>(train.size()))});
  }
  const auto brute = oracle::brute_front(table, d, dist_max(d));
  REQUIRE(res.front.size() == brute.size());
  for (std::size_t i = 0; i < brute.size(); ++i) {
    CHECK(res.front.points[i].distance == brute[i].distance);
    CHECK(res.front.points[i].effectiveness == brute[i].eff);
    CHECK(res.front.points[i].witness == brute[i].witness);
  }
  CHECK(res.layers.size() == static_cast<std::size_t>(dist_max(d) + 1));
  CHECK(res.front.points.front().distance == 0);
}

TEST_CASE("serial and parallel execution give identical results") {
  const auto d = expand_domains();
  const TrainingSet train(mixed(5), d);
  SynthesisConfig cfg;
  cfg.free_params = parse_free_params("VF_th,VT_th,VTdur");
  cfg.max_distance = 6;
  const auto par = synthesize_exact(train, d, cfg);
  cfg.execution = Execution::Serial;
  const auto ser = synthesize_exact(train, d, cfg);
  CHECK(par.front == ser.front);
  CHECK(par.evaluations == ser.evaluations);
}

TEST_CASE("unattackable signals give the trivial front") {
  const auto d = expand_domains();
  const TrainingSet train(prepare_all(generate(builtin_condition("sinus-rhythm"), 5, 1)), d);
  SynthesisConfig cfg;
  cfg.free_params = parse_free_params("VF_th,VT_th,VTdur");
  const auto res = synthesize_exact(train, d, cfg);
  REQUIRE(res.front.size() == 1);
  CHECK(res.front.points[0].distance == 0);
  CHECK(res.front.points[0].effectiveness == Rational(0));
  CHECK(res.front.points[0].witness == ParamVector::nominal(d));
}

TEST_CASE("grid cap") {
  const auto d = expand_domains();
  const TrainingSet train(mixed(2), d);
  SynthesisConfig cfg;
  CHECK(exact_grid_size(d, cfg) == d.grid_size());
  CHECK_THROWS_AS(synthesize_exact(train, d, cfg), GridTooLargeError);
  cfg.free_params = parse_free_params("VF_th");
  cfg.enumeration_cap = 10;
  CHECK_THROWS_AS(synthesize_exact(train, d, cfg), GridTooLargeError);
  cfg.max_distance = 4;  // 9 values
  CHECK_NOTHROW(synthesize_exact(train, d, cfg));
}

TEST_CASE("random search is seeded, stays in the box and never beats exact") {
  const auto d = small_domain();
  const TrainingSet train(mixed(9), d);
  SynthesisConfig cfg;
  cfg.backend = Backend::Random;
  cfg.free_params = parse_free_params("VF_th,VTdur,NSRcor_th");
  cfg.budget = 60;
  cfg.seed = 77;
  const auto a = random_samples(d, cfg);
  CHECK(a == random_samples(d, cfg));
  cfg.seed = 78;
  CHECK(a != random_samples(d, cfg));
  cfg.max_distance = 2;
  for (const auto& v : random_samples(d, cfg)) CHECK(distance(v, d) <= 2);
  cfg.max_distance.reset();

  const auto rnd = synthesize_random(train, d, cfg);
  CHECK(rnd.front.points.front().distance == 0);
  cfg.backend = Backend::Exact;
  const auto ex = synthesize_exact(train, d, cfg);
  CHECK(auc(ex.front, d) >= auc(rnd.front, d));
  for (const auto& p : rnd.front.points) {
    bool covered = false;
    for (const auto& q : ex.front.points) covered = covered || (q.distance <= p.distance && q.effectiveness >= p.effectiveness);
    CHECK(covered);
  }
}

TEST_CASE("backend names") {
  CHECK(backend_from_name("exact") == Backend::Exact);
  CHECK(backend_from_name("random") == Backend::Random);
  CHECK(backend_from_name("smt") == Backend::SmtEmit);
  CHECK(backend_name(Backend::Random) == "random");
  CHECK_THROWS(backend_from_name("annealing"));
}

}
