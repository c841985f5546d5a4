#include <doctest.h>

#include <sstream>

#include "icd/error.hpp"
#include "icd/generator.hpp"
#include "icd/kernels.hpp"
#include "icd/objectives.hpp"
#include "icd/sexpr.hpp"
#include "icd/signal_io.hpp"
#include "icd/smt.hpp"
#include "icd/smt_eval.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace icd;

namespace {

// Three values per list around the factory nominal.
ParameterDomain tiny_domain() {
  return domains_from_json(nlohmann::json::parse(R"({"parameters": {
      "VF_th": {"nominal": 200, "values": [190, 200, 210]},
      "VT_th": {"nominal": 160, "values": [150, 160, 170]},
      "AFib_th": {"nominal": 170, "values": [160, 170, 180]},
      "VFdur": {"nominal": 1, "values": [1, 1.5, 2]},
      "VTdur": {"nominal": 2.5, "values": [2, 2.5, 3]},
      "NSRcor_th": {"nominal": 0.94, "values": [0.93, 0.94, 0.95]},
      "stb": {"nominal": 20, "values": [18, 20, 22]}}})"));
}

std::vector<PreparedSignal> short_signals(std::uint64_t seed, int n) {
  ConditionSpec spec = builtin_condition("AFib-conducted");
  spec.duration_s = 6;
  auto a = generate(spec, n, seed);
  spec = builtin_condition("monomorphic-VT");
  spec.duration_s = 6;
  auto b = generate(spec, n, seed + 1);
  a.insert(a.end(), b.begin(), b.end());
  return prepare_all(a);
}

const char* kModel = R"(sat
(
  (define-fun VF_th () Int
    300)
  (define-fun VT_th () Int 375)
  (define-fun AFib_th () Int 353)
  (define-fun VFdur () Int 1000)
  (define-fun VTdur () Int 2500)
  (define-fun NSRcor_th () Real
    (/ 47.0 50.0))
  (define-fun stb () Real 20.0)
  (define-fun dist () Int 0)
  (define-fun effective_1 () Bool false)
  (define-fun effective_2 () Bool true)
)
(objectives
 (dist 0)
)
)";

}  // namespace

TEST_SUITE("smt") {

TEST_CASE("s-expression reader") {
  const auto e = parse_sexprs("; comment\n(assert (and a |b c| \"s\"\"q\"))\n(check-sat)");
  REQUIRE(e.size() == 2);
  CHECK(e[0].head() == "assert");
  CHECK(e[0].items[1].items[2].atom == "b c");
  CHECK(e[0].items[1].items[3].atom == "s\"q");
  CHECK(e[1].str() == "(check-sat)");
  try {
    parse_sexprs("(a\n(b)\n");
    FAIL("expected DecodeError");
  } catch (const DecodeError& err) {
    CHECK(err.line() == 1);
  }
  CHECK_THROWS_AS(parse_sexprs("a)\n"), DecodeError);
}

TEST_CASE("numeric literals") {
  CHECK(smt_real_literal(Rational(94, 100)) == "0.94");
  CHECK(smt_real_literal(Rational(20)) == "20.0");
  CHECK(smt_real_literal(Rational(5, 49)) == "(/ 5.0 49.0)");
  CHECK(smt_real_literal(Rational(-1, 2)) == "(- 0.5)");
  CHECK(smt_real_literal(Rational(7, 100)) == "0.07");
  CHECK(smt_int_literal(-3) == "(- 3)");
  for (const char* text : {"0.94", "20.0", "(/ 5.0 49.0)", "(- 0.5)", "(- 3)", "375"}) {
    const auto e = parse_sexprs(text).at(0);
    REQUIRE(is_numeric_literal(e));
  }
  CHECK(numeric_value(parse_sexprs("(/ 47.0 50.0)")[0]) == Rational(94, 100));
  CHECK(numeric_value(parse_sexprs("(- 3)")[0]) == Rational(-3));
  CHECK_FALSE(is_numeric_literal(parse_sexprs("x")[0]));
}

TEST_CASE("document structure") {
  const auto d = expand_domains();
  const auto signals = short_signals(3, 2);
  const auto doc = emit_smt(signals, d, SmtMode::max_eff_at(3), parse_free_params("VF_th,VTdur"));
  const auto& m = doc.metadata;
  CHECK(m.soft_ids.size() == signals.size());
  CHECK(m.signals.size() == signals.size());
  CHECK(m.dist_max == 24);
  CHECK(doc.text.rfind("(set-logic QF_LIRA)") != std::string::npos);
  CHECK(doc.text.find("(assert (<= dist 3))") >= m.body_size);
  CHECK(doc.body().find("check-sat") == std::string::npos);

  std::size_t soft = 0;
  for (std::size_t pos = 0; (pos = doc.text.find("(assert-soft ", pos)) != std::string::npos; ++pos) ++soft;
  CHECK(soft == signals.size());
  // Non-free parameters are pinned to nominal.
  CHECK(doc.text.find("(assert (= VT_th 375))") != std::string::npos);
  CHECK(doc.text.find("(assert (= VF_th 300))") == std::string::npos);
  CHECK(doc.text.find("(declare-const NSRcor_th Real)") != std::string::npos);

  const auto pareto = emit_smt(signals, d, SmtMode::pareto());
  CHECK(pareto.text.find("(minimize dist)") != std::string::npos);
  CHECK(pareto.text.find(":opt.priority pareto") != std::string::npos);
}

TEST_CASE("distance ladder matches the golden file") {
  const auto d = tiny_domain();
  const auto doc = emit_smt(short_signals(1, 1), d, SmtMode::pareto());
  std::string ladder;
  std::istringstream in(doc.text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind("(assert (=> (<= dist ", 0) == 0) ladder += line + "\n";
  CHECK(ladder == read_file(std::string(ICD_GOLDEN_DIR) + "/ladder_tiny.smt2"));
}

TEST_CASE("pinned documents force the simulator's therapy bits") {
  const auto d = tiny_domain();
  const auto signals = short_signals(7, 2);
  const TrainingSet set(std::vector<PreparedSignal>(signals), d);
  const auto doc = emit_smt(signals, d, SmtMode::pareto());
  const GroundEvaluator ev(doc.text);
  for (const auto& v : oracle::all_vectors(d, kAllFree)) {
    if ((v.idx[0] + v.idx[2] + v.idx[4] + v.idx[6]) % 3 != 0) continue;  // a third of the grid
    const auto r = ev.evaluate(pin_assertions(doc, v, d));
    REQUIRE(r.consistent);
    REQUIRE(r.unassigned.empty());
    const Params p = to_params(v, d);
    int flips = 0;
    for (std::size_t j = 0; j < signals.size(); ++j) {
      const auto th = run(signals[j], p);
      for (std::size_t k = 0; k < th.size(); ++k) {
        const auto val = ev.value(r, doc.metadata.th_var(j, k));
        REQUIRE(val);
        REQUIRE(val->b == th[k]);
      }
      flips += reachability(th) != set.baseline()[j];
    }
    REQUIRE(r.soft_satisfied == flips);
  }
}

TEST_CASE("the evaluator reports contradicted assertions") {
  const auto d = tiny_domain();
  const PreparedSignal s(testutil::constant_signal(240, 20));
  const auto doc = emit_smt(std::vector<PreparedSignal>{s}, d, SmtMode::pareto());
  const GroundEvaluator ev(doc.text);
  const auto nominal = ParamVector::nominal(d);
  CHECK(ev.evaluate(pin_assertions(doc, nominal, d)).consistent);
  const auto bad = ev.evaluate(pin_assertions(doc, nominal, d) + "(assert (not s1_Th_14))\n");
  CHECK_FALSE(bad.consistent);
  CHECK(bad.violated.size() == 1);
  const auto loose = ev.evaluate();
  CHECK_FALSE(loose.consistent);
  CHECK_FALSE(loose.undetermined.empty());
}

TEST_CASE("decoding solver models") {
  const auto d = expand_domains();
  const auto signals = short_signals(3, 1);
  const auto doc = emit_smt(signals, d, SmtMode::max_eff_at(0));
  const auto m = decode_model(kModel, d, doc.metadata);
  CHECK(m.sat);
  CHECK(m.params == ParamVector::nominal(d));
  CHECK(m.claimed_effective == 1);
  CHECK(m.dist == 0);

  std::string off = kModel;
  off.replace(off.find("375"), 3, "376");
  CHECK_THROWS_AS(decode_model(off, d, doc.metadata), DecodeError);
  std::string frac = kModel;
  frac.replace(frac.find("20.0"), 4, "(/ 41.0 2.0)");
  CHECK_THROWS_AS(decode_model(frac, d, doc.metadata), DecodeError);
  std::string missing = kModel;
  missing.erase(missing.find("(define-fun VT_th"), std::string("(define-fun VT_th () Int 375)").size());
  CHECK_THROWS_AS(decode_model(missing, d, doc.metadata), DecodeError);
  CHECK_THROWS_AS(decode_model("(error \"boom\")", d, doc.metadata), DecodeError);

  const auto values = decode_model(
      "sat\n((VF_th 300) (VT_th 375) (AFib_th 353) (VFdur 1000) (VTdur 2500) (NSRcor_th 0.94) (stb 20.0)"
      " (effective_1 true) (effective_2 true))\n",
      d, doc.metadata);
  CHECK(values.claimed_effective == 2);
  CHECK_FALSE(values.dist);

  const std::string several = std::string(kModel) + kModel + "unsat\n(error \"model is not available\")\n" + kModel;
  const auto models = decode_models(several, d, doc.metadata);
  REQUIRE(models.size() == 3);
  CHECK(models[0].sat);
  CHECK(models[1].sat);
  CHECK_FALSE(models[2].sat);
  CHECK_FALSE(decode_model("unsat\n", d, doc.metadata).sat);
}

TEST_CASE("external solver harness") {
  using namespace std::chrono_literals;
  CHECK(run_external_solver("cat {file}", std::string("(check-sat)\n"), 5s) == "(check-sat)\n");
  CHECK(run_external_solver("cat", std::string("abc"), 5s) == "abc");
  try {
    run_external_solver("definitely-not-a-solver-binary {file}", std::string("x"), 5s);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverFailure::MissingBinary);
  }
  try {
    run_external_solver("echo oops >&2; exit 4", std::string("x"), 5s);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverFailure::NonZeroExit);
    CHECK(e.exit_code() == 4);
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
  const auto t0 = std::chrono::steady_clock::now();
  try {
    run_external_solver("sleep 20; cat {file}", std::string("x"), 200ms);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.kind() == SolverFailure::Timeout);
  }
  CHECK(std::chrono::steady_clock::now() - t0 < 10s);
  CHECK_THROWS_AS(run_external_solver("cat", std::string("x"), 0ms), SolverError);
}

TEST_CASE("external solver round trip" * doctest::skip(!default_solver_command().has_value())) {
  using namespace std::chrono_literals;
  const auto d = tiny_domain();
  const auto signals = short_signals(5, 2);
  const TrainingSet set(std::vector<PreparedSignal>(signals), d);
  const auto cmd = *default_solver_command();

  // Distance 0 admits only the nominal vector.
  const auto doc0 = emit_smt(signals, d, SmtMode::max_eff_at(0));
  const auto m0 = decode_model(run_external_solver(cmd, doc0, 120s), d, doc0.metadata);
  REQUIRE(m0.sat);
  CHECK(m0.params == ParamVector::nominal(d));
  CHECK(m0.claimed_effective == 0);

  // The optimum at distance 2 equals exhaustive search.
  const auto doc = emit_smt(signals, d, SmtMode::max_eff_at(2));
  const auto m = decode_model(run_external_solver(cmd, doc, 120s), d, doc.metadata);
  REQUIRE(m.sat);
  CHECK(static_cast<int>(count_flips_reference(set, to_params(m.params, d))) == m.claimed_effective);
  std::uint32_t best = 0;
  for (const auto& v : oracle::all_vectors(d, kAllFree)) best = std::max(best, count_flips_reference(set, to_params(v, d)));
  CHECK(m.claimed_effective == static_cast<int>(best));
}

}
