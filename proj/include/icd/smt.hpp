#pragma once

#include <chrono>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "icd/parameters.hpp"
#include "icd/rational.hpp"
#include "icd/signal.hpp"

namespace icd {

// Which optimization the emitted document asks the solver for.
struct SmtMode {
  enum class Kind { MaxEffAtDist, Pareto };
  Kind kind = Kind::Pareto;
  int distance = 0;  // MaxEffAtDist only

  static SmtMode max_eff_at(int s) { return {Kind::MaxEffAtDist, s}; }
  static SmtMode pareto() { return {Kind::Pareto, 0}; }
};

struct SmtSignalVars {
  std::string id;
  std::string prefix;  // e.g. "s3_"; state variables are <prefix>VFd_<k> etc.
  std::size_t cycles = 0;
  bool nominal_reach = false;
};

struct SmtMetadata {
  std::array<std::string, kParamCount> param_vars;
  std::string dist_var = "dist";
  std::string soft_group = "eff";
  std::vector<std::string> soft_ids;  // effective_<j>, one per training signal
  std::vector<SmtSignalVars> signals;
  FreeMask free_params = kAllFree;
  int dist_max = 0;
  std::size_t body_size = 0;  // text offset where solver commands begin

  std::string th_var(std::size_t j, std::size_t k) const;
};

struct SmtDocument {
  std::string text;
  SmtMetadata metadata;

  // Declarations and constraints only, without objectives or check-sat.
  std::string body() const { return text.substr(0, metadata.body_size); }
};

// Bounded unrolling of the discrimination algorithm over every training
// signal, with programmable-value ranges, the distance ladder, one weight-1
// soft constraint per signal, and objective directives for the mode.
// Parameter-independent quantities (intervals, D5, Vvar, atrial counts,
// nominal reachability) are substituted as constants.
SmtDocument emit_smt(std::span<const PreparedSignal> train, const ParameterDomain& d, SmtMode mode,
                     const FreeMask& free = kAllFree);

// Body plus equalities fixing every parameter (and dist) to v, followed by
// check-sat and a get-value query over all Th and effective variables.
std::string pinned_query(const SmtDocument& doc, const ParamVector& v, const ParameterDomain& d);

// The asserted equalities alone.
std::string pin_assertions(const SmtDocument& doc, const ParamVector& v, const ParameterDomain& d);

struct DecodedModel {
  bool sat = false;
  ParamVector params;
  int claimed_effective = 0;
  std::optional<int> dist;
  std::map<std::string, std::string> values;  // raw variable -> printed value
};

// Reads "sat" + get-model / get-value output (and optional get-objectives).
// Parameter values must be on the programmable grid, else DecodeError.
DecodedModel decode_model(const std::string& solver_output, const ParameterDomain& d,
                          const SmtMetadata& meta);

// Every model in the output, in order (PARETO documents hold several). Output
// after the first unsat is ignored.
std::vector<DecodedModel> decode_models(const std::string& solver_output, const ParameterDomain& d,
                                        const SmtMetadata& meta);

struct SolverOutput {
  std::string out;
  std::string err;
  int exit_code = 0;
};

// Runs the solver and returns whatever it printed. Throws SolverError only
// for timeouts, signals, a missing binary (exit 127) and I/O failures.
SolverOutput run_solver_process(const std::string& command_template, const std::string& smt_text,
                                std::chrono::milliseconds timeout);

// Runs `command_template` through /bin/sh with "{file}" replaced by a
// temporary file holding `smt_text`, and returns stdout. Timeouts kill the
// process group. A non-zero exit status is a SolverError.
std::string run_external_solver(const std::string& command_template, const std::string& smt_text,
                                std::chrono::milliseconds timeout);
std::string run_external_solver(const std::string& command_template, const SmtDocument& doc,
                                std::chrono::milliseconds timeout);

// ICD_SMT_SOLVER, if set and non-empty.
std::optional<std::string> default_solver_command();

}  // namespace icd
