#include "icd/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "icd/error.hpp"
#include "icd/generator.hpp"
#include "icd/objectives.hpp"
#include "icd/rng.hpp"
#include "icd/signal_io.hpp"
#include "icd/smt.hpp"

namespace icd {

namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

ExperimentManifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw DomainError("manifest must be a JSON object");
  ExperimentManifest m;
  try {
    m.train = resolve(base_dir, j.at("train").get<std::string>());
    if (j.contains("test")) m.test = resolve(base_dir, j.at("test").get<std::string>());
    if (j.contains("domains")) m.domains = resolve(base_dir, j.at("domains").get<std::string>());
    if (j.contains("out")) m.out = resolve(base_dir, j.at("out").get<std::string>());
    m.seed = j.value("seed", std::uint64_t{0});
    m.config.seed = m.seed;
    if (j.contains("config")) {
      const auto& c = j.at("config");
      if (c.contains("backend")) m.config.backend = backend_from_name(c.at("backend").get<std::string>());
      if (c.contains("free_params")) m.config.free_params = parse_free_params(c.at("free_params").get<std::string>());
      if (c.contains("max_distance")) m.config.max_distance = c.at("max_distance").get<int>();
      if (c.contains("budget")) m.config.budget = c.at("budget").get<std::uint64_t>();
      if (c.contains("enumeration_cap")) m.config.enumeration_cap = c.at("enumeration_cap").get<std::uint64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad manifest: ") + e.what());
  }
  return m;
}

ExperimentManifest load_manifest(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
  return manifest_from_json(j, path.parent_path());
}

namespace {

nlohmann::json exact_number(const Rational& r) {
  return {{"value", r.to_double()}, {"exact", r.str()}};
}

nlohmann::json witness_json(const ParamVector& v, const ParameterDomain& d) {
  nlohmann::json j = nlohmann::json::object();
  for (ParamId id : kAllParams) j[std::string(param_name(id))] = d[id].value(v[id]);
  return j;
}

}  // namespace

nlohmann::json synthesis_report(const SynthesisResult& result, const ParameterDomain& d,
                                const SynthesisConfig& cfg, std::size_t train_size,
                                const std::optional<Rational>& validation) {
  const auto& pts = result.front.points;
  nlohmann::json r;
  r["backend"] = std::string(backend_name(cfg.backend));
  r["free_params"] = format_free_params(cfg.free_params);
  r["max_distance"] = distance_limit(cfg, d);
  r["dist_max"] = dist_max(d);
  r["seed"] = cfg.seed;
  if (cfg.backend == Backend::Random) r["budget"] = cfg.budget;
  r["train_signals"] = train_size;
  r["front_size"] = pts.size();
  r["evaluations"] = result.evaluations;

  Rational eff_sum(0);
  Rational eff_min = pts.empty() ? Rational(0) : pts.front().effectiveness;
  Rational eff_max = eff_min;
  std::int64_t dist_sum = 0;
  int dmin = pts.empty() ? 0 : pts.front().distance;
  int dmax = dmin;
  for (const auto& p : pts) {
    eff_sum += p.effectiveness;
    eff_min = std::min(eff_min, p.effectiveness);
    eff_max = std::max(eff_max, p.effectiveness);
    dist_sum += p.distance;
    dmin = std::min(dmin, p.distance);
    dmax = std::max(dmax, p.distance);
  }
  const auto n = static_cast<std::int64_t>(std::max<std::size_t>(pts.size(), 1));
  r["effectiveness"] = {{"mean", exact_number(eff_sum / Rational(n))},
                        {"min", exact_number(eff_min)},
                        {"max", exact_number(eff_max)}};
  r["distance"] = {{"mean", exact_number(Rational(dist_sum, n))}, {"min", dmin}, {"max", dmax}};
  r["auc"] = exact_number(auc(result.front, d));
  r["validation_score"] = validation ? exact_number(*validation) : nlohmann::json(nullptr);

  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : result.layers)
    layers.push_back({{"distance", l.distance},
                      {"evaluated", l.evaluated},
                      {"best_at_layer", l.best_at_layer ? exact_number(*l.best_at_layer) : nlohmann::json(nullptr)},
                      {"best_so_far", exact_number(l.best_so_far)}});
  r["layers"] = layers;

  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& p : pts)
    witnesses.push_back({{"distance", p.distance},
                         {"effectiveness", exact_number(p.effectiveness)},
                         {"parameters", witness_json(p.witness, d)}});
  r["witnesses"] = witnesses;
  return r;
}

namespace {

struct Usage : Error {
  using Error::Error;
};

ParameterDomain domains_or_default(const std::optional<std::filesystem::path>& path) {
  ParameterDomain d = path ? load_domains(*path) : expand_domains();
  d.validate();
  return d;
}

std::vector<PreparedSignal> load_prepared(const std::filesystem::path& p) { return prepare_all(load_signals(p)); }

std::string front_csv(const ParetoFront& f, const ParameterDomain& d) {
  std::ostringstream os;
  write_front_csv(os, f, d);
  return os.str();
}

struct SolveOptions {
  std::string command;
  std::chrono::milliseconds timeout{600000};
  bool pareto_document = false;
};

// Checks a decoded model against the simulator: the solver's count of
// effective signals must match re-simulation exactly.
FrontPoint verified_point(const DecodedModel& m, const TrainingSet& train, const ParameterDomain& d) {
  const auto flips = count_flips_reference(train, to_params(m.params, d));
  if (static_cast<int>(flips) != m.claimed_effective)
    throw SolverError(SolverFailure::NonZeroExit, "solver model claims " + std::to_string(m.claimed_effective) +
                                                      " effective signals, simulation gives " + std::to_string(flips));
  return {distance(m.params, d), train.as_effectiveness(flips), m.params};
}

// One max-effectiveness query per distance bound (or a single Pareto
// document), every model verified by re-simulation.
SynthesisResult solve_with_smt(const TrainingSet& train, const ParameterDomain& d, const SynthesisConfig& cfg,
                               const SolveOptions& opt, std::ostream& log) {
  SynthesisResult result;
  std::vector<FrontPoint> candidates;
  const int limit = distance_limit(cfg, d);
  if (opt.pareto_document) {
    const auto doc = emit_smt(train.signals(), d, SmtMode::pareto(), cfg.free_params);
    // z3 answers the surplus get-model after the final unsat with an error
    // and a non-zero exit; the decoder stops before that point, so the run
    // is accepted as long as the front was completed.
    const auto run = run_solver_process(opt.command, doc.text, opt.timeout);
    const auto models = decode_models(run.out, d, doc.metadata);
    const bool completed = !models.empty() && !models.back().sat;
    if (run.exit_code != 0 && !completed)
      throw SolverError(SolverFailure::NonZeroExit,
                        "solver exited with status " + std::to_string(run.exit_code) + ": " + run.err.substr(0, 500),
                        run.exit_code);
    for (const auto& m : models) {
      if (!m.sat) break;
      ++result.evaluations;
      auto p = verified_point(m, train, d);
      if (p.distance <= limit) candidates.push_back(p);
    }
  } else {
    Rational best(0);
    for (int s = 0; s <= limit; ++s) {
      // Same box as the previous bound (every free list exhausted), or every
      // signal already flipped: the optimum cannot change.
      if (s > 0 && (best == Rational(1) ||
                    restricted_box(s, d, cfg.free_params) == restricted_box(s - 1, d, cfg.free_params))) {
        result.layers.push_back({s, 0, std::nullopt, best});
        continue;
      }
      const auto doc = emit_smt(train.signals(), d, SmtMode::max_eff_at(s), cfg.free_params);
      const auto m = decode_model(run_external_solver(opt.command, doc, opt.timeout), d, doc.metadata);
      if (!m.sat) throw SolverError(SolverFailure::NonZeroExit, "solver reports no model at distance " + std::to_string(s));
      ++result.evaluations;
      auto p = verified_point(m, train, d);
      if (p.distance > s) throw DecodeError("model at bound " + std::to_string(s) + " lies at distance " + std::to_string(p.distance));
      best = std::max(best, p.effectiveness);
      result.layers.push_back({s, 1, p.effectiveness, best});
      log << "distance " << s << ": effectiveness " << p.effectiveness.str() << "\n";
      candidates.push_back(p);
    }
  }
  if (candidates.empty()) candidates.push_back({0, Rational(0), ParamVector::nominal(d)});
  result.front = pareto_filter(std::move(candidates));
  return result;
}

void write_outputs(const std::filesystem::path& dir, const SynthesisResult& res, const ParameterDomain& d,
                   const SynthesisConfig& cfg, std::size_t train_size, const std::optional<Rational>& vscore,
                   double seconds) {
  std::filesystem::create_directories(dir);
  write_file_atomic(dir / "front.csv", front_csv(res.front, d));
  write_file_atomic(dir / "report.json", synthesis_report(res, d, cfg, train_size, vscore).dump(2) + "\n");
  const nlohmann::json timing = {{"wall_time_s", seconds}, {"threads", omp_get_max_threads()}};
  write_file_atomic(dir / "timing.json", timing.dump(2) + "\n");
}

struct Flags {
  std::string manifest, train, test, domains, free_params, backend, out, solver_cmd, spec, signals, params, front,
      mode = "pareto";
  std::optional<int> max_distance, distance;
  std::optional<std::uint64_t> budget, seed;
  int n = 0;
  long long timeout_ms = 600000;
  bool serial = false, no_calibrate = false, list = false, pareto_document = false;
};

ExperimentManifest experiment(const Flags& f) {
  ExperimentManifest m;
  if (!f.manifest.empty()) m = load_manifest(f.manifest);
  if (!f.train.empty()) m.train = f.train;
  if (!f.test.empty()) m.test = f.test;
  if (!f.domains.empty()) m.domains = f.domains;
  if (!f.out.empty()) m.out = f.out;
  if (f.seed) m.seed = m.config.seed = *f.seed;
  try {
    if (!f.free_params.empty()) m.config.free_params = parse_free_params(f.free_params);
    if (!f.backend.empty()) m.config.backend = backend_from_name(f.backend);
  } catch (const Error& e) {
    throw Usage(e.what());
  }
  if (f.max_distance) m.config.max_distance = *f.max_distance;
  if (f.budget) m.config.budget = *f.budget;
  if (f.serial) m.config.execution = Execution::Serial;
  if (m.train.empty()) throw Usage("a training set is required (--train or --manifest)");
  if (m.config.max_distance && *m.config.max_distance < 0) throw Usage("--max-distance must be non-negative");
  return m;
}

SolveOptions solve_options(const Flags& f) {
  SolveOptions o;
  if (!f.solver_cmd.empty()) o.command = f.solver_cmd;
  else if (auto env = default_solver_command()) o.command = *env;
  else throw SolverError(SolverFailure::MissingBinary, "no solver configured (--solver-cmd or ICD_SMT_SOLVER)");
  o.timeout = std::chrono::milliseconds(f.timeout_ms);
  o.pareto_document = f.pareto_document;
  return o;
}

int cmd_gen(const Flags& f, std::ostream& out, std::ostream& err) {
  if (f.list) {
    for (const auto& c : builtin_conditions()) out << c.name << "\t" << label_name(c.label) << "\n";
    return kExitOk;
  }
  if (f.spec.empty()) throw Usage("--spec is required");
  if (f.out.empty()) throw Usage("--out is required");
  if (f.n < 1) throw Usage("-n must be at least 1");
  const ConditionSpec spec = std::filesystem::exists(f.spec) ? load_spec(f.spec) : builtin_condition(f.spec);
  const std::uint64_t seed = f.seed.value_or(0);

  nlohmann::json meta = {{"generator", std::string(SplitMix64::kAlgorithm)}, {"condition", spec_to_json(spec)},
                         {"seed", seed}, {"count", f.n}};
  std::vector<FeatureSignal> signals;
  if (f.no_calibrate) {
    signals = generate(spec, f.n, seed);
  } else {
    auto cal = generate_calibrated(spec, f.n, seed);
    if (cal.attempts > 1)
      err << "warning: seed " << seed << " failed nominal calibration; regenerated with seed " << cal.seed_used
          << " (attempt " << cal.attempts << ")\n";
    meta["seed_used"] = cal.seed_used;
    meta["calibration_attempts"] = cal.attempts;
    meta["misclassification"] = cal.misclassification;
    signals = std::move(cal.signals);
  }
  save_signals(signals, f.out, meta);
  out << "wrote " << signals.size() << " signals to " << f.out << "\n";
  return kExitOk;
}

int cmd_simulate(const Flags& f, std::ostream& out) {
  if (f.signals.empty()) throw Usage("--signals is required");
  const ParameterDomain d = domains_or_default(f.domains.empty() ? std::nullopt : std::optional<std::filesystem::path>(f.domains));
  const ParamVector v = f.params.empty() ? ParamVector::nominal(d) : parse_param_overrides(f.params, d);
  const Params p = to_params(v, d);
  const auto signals = load_prepared(f.signals);

  std::ostringstream csv;
  csv << "id,label,cycles,therapy,first_therapy_cycle\n";
  std::vector<std::string> traces(signals.size());
  for (std::size_t i = 0; i < signals.size(); ++i) {
    const auto& s = signals[i];
    const auto th = run(s, p);
    long first = -1;
    for (std::size_t k = 0; k < th.bits.size(); ++k)
      if (th.bits[k]) {
        first = static_cast<long>(k);
        break;
      }
    csv << s.signal.id << "," << label_name(s.signal.label) << "," << s.cycles() << "," << (first >= 0 ? 1 : 0)
        << "," << first << "\n";
    std::ostringstream tr;
    write_trace(tr, s, p);
    traces[i] = tr.str();
  }
  if (f.out.empty()) {
    out << csv.str();
    return kExitOk;
  }
  const std::filesystem::path dir(f.out);
  std::filesystem::create_directories(dir / "traces");
  write_file_atomic(dir / "therapy.csv", csv.str());
  for (std::size_t i = 0; i < signals.size(); ++i)
    write_file_atomic(dir / "traces" / (signals[i].signal.id + ".tsv"), traces[i]);
  out << "simulated " << signals.size() << " signals into " << dir.string() << "\n";
  return kExitOk;
}

int cmd_synth(const Flags& f, std::ostream& out, std::ostream& err) {
  const ExperimentManifest m = experiment(f);
  const ParameterDomain d = domains_or_default(m.domains);
  SynthesisConfig cfg = m.config;
  if (cfg.backend == Backend::Random && cfg.budget == 0) cfg.budget = 1000;
  const TrainingSet train(load_prepared(m.train), d);
  if (train.size() == 0) throw ParseError("training set is empty");

  const auto t0 = std::chrono::steady_clock::now();
  SynthesisResult res;
  switch (cfg.backend) {
    case Backend::Exact: res = synthesize_exact(train, d, cfg); break;
    case Backend::Random: res = synthesize_random(train, d, cfg); break;
    case Backend::SmtEmit: res = solve_with_smt(train, d, cfg, solve_options(f), err); break;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::optional<Rational> vscore;
  if (m.test) {
    const auto test = load_prepared(*m.test);
    vscore = validation_score(res.front, d, train.signals(), test);
  }
  write_outputs(m.out, res, d, cfg, train.size(), vscore, seconds);
  out << "front with " << res.front.size() << " points written to " << m.out.string() << "\n";
  for (const auto& p : res.front.points) out << "  distance " << p.distance << "  effectiveness " << p.effectiveness.str() << "\n";
  return kExitOk;
}

int cmd_emit_smt(const Flags& f, std::ostream& out) {
  const ExperimentManifest m = experiment(f);
  const ParameterDomain d = domains_or_default(m.domains);
  SmtMode mode;
  if (f.mode == "pareto") {
    mode = SmtMode::pareto();
  } else if (f.mode == "max-eff") {
    if (!f.distance) throw Usage("--distance is required with --mode max-eff");
    if (*f.distance < 0 || *f.distance > dist_max(d)) throw Usage("--distance out of range");
    mode = SmtMode::max_eff_at(*f.distance);
  } else {
    throw Usage("--mode must be 'pareto' or 'max-eff'");
  }
  const auto train = load_prepared(m.train);
  const auto doc = emit_smt(train, d, mode, m.config.free_params);
  std::filesystem::path target = f.out.empty() ? m.out / "problem.smt2" : std::filesystem::path(f.out);
  if (std::filesystem::is_directory(target)) target /= "problem.smt2";
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  write_file_atomic(target, doc.text);
  out << "wrote " << doc.text.size() << " bytes to " << target.string() << "\n";
  return kExitOk;
}

int cmd_solve(const Flags& f, std::ostream& out, std::ostream& err) {
  const ExperimentManifest m = experiment(f);
  const ParameterDomain d = domains_or_default(m.domains);
  SynthesisConfig cfg = m.config;
  cfg.backend = Backend::SmtEmit;
  const SolveOptions opt = solve_options(f);
  const TrainingSet train(load_prepared(m.train), d);
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = solve_with_smt(train, d, cfg, opt, err);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::optional<Rational> vscore;
  if (m.test) vscore = validation_score(res.front, d, train.signals(), load_prepared(*m.test));
  write_outputs(m.out, res, d, cfg, train.size(), vscore, seconds);
  for (const auto& p : res.front.points) out << "distance " << p.distance << "  effectiveness " << p.effectiveness.str() << "\n";
  return kExitOk;
}

int cmd_validate(const Flags& f, std::ostream& out) {
  if (f.front.empty() || f.test.empty()) throw Usage("--front and --test are required");
  const ParameterDomain d = domains_or_default(f.domains.empty() ? std::nullopt : std::optional<std::filesystem::path>(f.domains));
  std::istringstream in(read_file(f.front));
  const auto rows = read_front_csv(in, d);
  if (rows.empty()) throw ParseError("front file has no rows");
  const auto test = load_prepared(f.test);
  const auto test_base = baseline_reach(test, d);

  std::optional<std::vector<PreparedSignal>> train;
  std::vector<bool> train_base;
  if (!f.train.empty()) {
    train = load_prepared(f.train);
    train_base = baseline_reach(*train, d);
  }

  std::ostringstream csv;
  csv << "distance,train_effectiveness,test_effectiveness";
  for (ParamId id : kAllParams) csv << "," << param_name(id);
  csv << "\n";
  Rational exact_sum(0);
  double approx_sum = 0;
  for (const auto& r : rows) {
    const Rational te = effectiveness(r.witness, d, test, test_base);
    double tr = r.effectiveness;
    if (train) {
      const Rational ex = effectiveness(r.witness, d, *train, train_base);
      exact_sum += te - ex;
      tr = ex.to_double();
    }
    approx_sum += te.to_double() - tr;
    csv << r.distance << "," << format_decimal(tr) << "," << format_decimal(te.to_double());
    for (ParamId id : kAllParams) csv << "," << format_decimal(d[id].value(r.witness[id]));
    csv << "\n";
  }
  const auto n = static_cast<std::int64_t>(rows.size());
  nlohmann::json summary = {{"points", rows.size()}};
  if (train) summary["validation_score"] = exact_number(exact_sum / Rational(n));
  else summary["validation_score"] = {{"value", approx_sum / static_cast<double>(n)}};
  const double score = summary["validation_score"]["value"].get<double>();

  if (!f.out.empty()) {
    const std::filesystem::path dir(f.out);
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / "validation.csv", csv.str());
    write_file_atomic(dir / "validation.json", summary.dump(2) + "\n");
  } else {
    out << csv.str();
  }
  out << "validation score " << format_decimal(score) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parameter-synthesis attacks on a two-zone ICD rhythm discriminator"};
  app.name(args.empty() ? "icdsynth" : args[0]);
  app.require_subcommand(1);
  Flags f;

  auto common_data = [&](CLI::App* c) {
    c->add_option("--manifest", f.manifest, "Experiment manifest (JSON)");
    c->add_option("--train", f.train, "Training signal set");
    c->add_option("--test", f.test, "Test signal set");
    c->add_option("--domains", f.domains, "Parameter domain override file");
    c->add_option("--free-params", f.free_params, "Comma list of parameters allowed to move, or 'all'");
    c->add_option("--max-distance", f.max_distance, "Largest distance considered");
    c->add_option("--seed", f.seed, "Seed for every random choice");
    c->add_option("--out", f.out, "Output location");
  };

  auto* gen = app.add_subcommand("gen", "Generate a synthetic signal set");
  gen->add_option("--spec", f.spec, "Condition spec file or builtin archetype name");
  gen->add_option("-n", f.n, "Number of signals");
  gen->add_option("--seed", f.seed, "Seed");
  gen->add_option("--out", f.out, "Output signal-set file");
  gen->add_flag("--no-calibrate", f.no_calibrate, "Skip the nominal-parameter calibration check");
  gen->add_flag("--list", f.list, "List builtin archetypes");

  auto* sim = app.add_subcommand("simulate", "Run the discriminator over a signal set");
  sim->add_option("--signals", f.signals, "Signal set");
  sim->add_option("--params", f.params, "Overrides in programmed units, e.g. VF_th=220,VTdur=5");
  sim->add_option("--domains", f.domains, "Parameter domain override file");
  sim->add_option("--out", f.out, "Output directory (therapy.csv and traces/)");

  auto* synth = app.add_subcommand("synth", "Synthesize the Pareto front of attacks");
  common_data(synth);
  synth->add_option("--backend", f.backend, "exact | random | smt");
  synth->add_option("--budget", f.budget, "Random-search sample count");
  synth->add_option("--solver-cmd", f.solver_cmd, "Solver command template ({file} is replaced)");
  synth->add_option("--timeout", f.timeout_ms, "Solver timeout per query (ms)");
  synth->add_flag("--serial", f.serial, "Use the serial reference kernels");

  auto* emit = app.add_subcommand("emit-smt", "Write the SMT-LIB2 encoding");
  common_data(emit);
  emit->add_option("--mode", f.mode, "pareto | max-eff");
  emit->add_option("--distance", f.distance, "Distance bound for max-eff");

  auto* solve = app.add_subcommand("solve", "Solve the encoding with an external solver");
  common_data(solve);
  solve->add_option("--solver-cmd", f.solver_cmd, "Solver command template ({file} is replaced)");
  solve->add_option("--timeout", f.timeout_ms, "Solver timeout per query (ms)");
  solve->add_flag("--pareto-document", f.pareto_document, "One Pareto document instead of per-distance queries");

  auto* val = app.add_subcommand("validate", "Score a front on a test set");
  val->add_option("--front", f.front, "Front CSV");
  val->add_option("--test", f.test, "Test signal set");
  val->add_option("--train", f.train, "Training signal set (exact train effectiveness)");
  val->add_option("--domains", f.domains, "Parameter domain override file");
  val->add_option("--out", f.out, "Output directory");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(f, out, err);
    if (sim->parsed()) return cmd_simulate(f, out);
    if (synth->parsed()) return cmd_synth(f, out, err);
    if (emit->parsed()) return cmd_emit_smt(f, out);
    if (solve->parsed()) return cmd_solve(f, out, err);
    if (val->parsed()) return cmd_validate(f, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const DecodeError& e) {
    err << "solver output error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

int run_cli(int argc, char** argv) {
  return run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace icd
