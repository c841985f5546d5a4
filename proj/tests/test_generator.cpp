#include <doctest.h>

#include "icd/error.hpp"
#include "icd/generator.hpp"
#include "icd/objectives.hpp"

using namespace icd;

TEST_SUITE("generator") {

TEST_CASE("cycle counts follow the duration and interval range") {
  ConditionSpec spec{"svt-wide", Label::NoTherapy, {280, 530}, 0, AtrialMode::Tracking, {}, 0.9, 30.0};
  const auto signals = generate(spec, 40, 5);
  for (const auto& s : signals) {
    CHECK(s.cycles() >= 56);
    CHECK(s.cycles() <= 108);
    long total = 0;
    for (int v : s.vints) {
      CHECK(v >= 280);
      CHECK(v <= 530);
      total += v;
    }
    CHECK(total >= 30000);
    CHECK(total - s.vints.back() < 30000);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const auto& spec = builtin_condition("AFib-conducted");
  CHECK(generate(spec, 5, 9) == generate(spec, 5, 9));
  const auto a = generate(spec, 5, 1);
  const auto b = generate(spec, 5, 2);
  for (const auto& x : a)
    for (const auto& y : b) {
      CHECK(x.id != y.id);
      CHECK(x.vints != y.vints);
    }
  CHECK(builtin_conditions() == builtin_conditions());
}

TEST_CASE("atrial bookkeeping matches the event timeline") {
  for (const auto& spec : builtin_conditions()) {
    for (const auto& s : generate(spec, 5, 31)) {
      CHECK_NOTHROW(validate(s));
      std::vector<long> a_times;
      long t = 0;
      for (int a : s.aints) a_times.push_back(t += a);
      long v_time = 0;
      for (std::size_t k = 0; k < s.cycles(); ++k) {
        v_time += s.vints[k];
        long done = 0;
        for (long at : a_times) done += at <= v_time ? 1 : 0;
        REQUIRE(s.atrial_count[k] == done);
      }
      for (double f : s.fcc) CHECK(((f >= 0.95 && f <= 0.99) || (f >= 0.2 && f <= 0.7)));
    }
  }
}

TEST_CASE("builtin archetypes are calibrated under nominal parameters") {
  CHECK(builtin_conditions().size() >= 4);
  for (const auto& spec : builtin_conditions()) {
    const auto signals = generate(spec, 40, 100);
    CHECK_MESSAGE(misclassification_rate(signals) <= 0.05, spec.name);
  }
  const auto vf = prepare_all(generate(builtin_condition("fast-VF"), 30, 3));
  for (const auto& s : vf) CHECK(reaches_therapy(s, Params{}));
  const auto svt = prepare_all(generate(builtin_condition("SVT-tracking"), 30, 3));
  for (const auto& s : svt) CHECK_FALSE(reachability(run(s, Params{})));
}

TEST_CASE("VT spec in the 240-300 ms range is detected") {
  ConditionSpec spec = builtin_condition("monomorphic-VT");
  spec.vint_range = {240, 300};
  const auto signals = prepare_all(generate(spec, 60, 8));
  int reached = 0;
  for (const auto& s : signals) reached += reaches_therapy(s, Params{}) ? 1 : 0;
  CHECK(reached >= 57);
}

TEST_CASE("calibrated generation reports regenerated seeds") {
  const auto ok = generate_calibrated(builtin_condition("SVT-tracking"), 10, 4);
  CHECK(ok.attempts == 1);
  CHECK(ok.seed_used == 4);

  // Fast intervals labelled SVT can never pass.
  ConditionSpec wrong = builtin_condition("fast-VF");
  wrong.label = Label::NoTherapy;
  CHECK_THROWS_AS(generate_calibrated(wrong, 5, 1, 0.05, 3), Error);
}

TEST_CASE("spec invariants and JSON") {
  const auto& spec = builtin_condition("atrial-flutter");
  CHECK(spec_from_json(spec_to_json(spec)) == spec);
  auto j = spec_to_json(spec);
  j["vint_range"] = {90, 200};
  CHECK_THROWS_AS(spec_from_json(j), DomainError);
  j = spec_to_json(spec);
  j["fcc_high_prob"] = 1.5;
  CHECK_THROWS_AS(spec_from_json(j), DomainError);
  j = spec_to_json(spec);
  j["a_to_v"] = "WANDERING";
  CHECK_THROWS_AS(spec_from_json(j), DomainError);
  j = spec_to_json(spec);
  j.erase("fcc_high_prob");
  CHECK_THROWS_AS(spec_from_json(j), DomainError);
  CHECK_THROWS_AS(generate(spec, 0, 1), DomainError);
  CHECK_THROWS_AS(builtin_condition("torsades"), DomainError);
}

}
