#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "icd/rational.hpp"
#include "icd/sexpr.hpp"

namespace icd {

struct GroundValue {
  bool is_bool = false;
  bool b = false;
  Rational r;

  static GroundValue boolean(bool v) { return {true, v, Rational()}; }
  static GroundValue number(Rational v) { return {false, false, v}; }
  bool operator==(const GroundValue&) const = default;
};

// Outcome of propagating a ground (parameter-pinned) document.
struct GroundResult {
  // Every assertion evaluated to true under the propagated assignment.
  bool consistent = false;
  std::vector<std::string> violated;      // assertions that evaluated to false
  std::vector<std::string> undetermined;  // assertions whose value was never fixed
  std::vector<std::string> unassigned;    // declared constants left free
  int soft_satisfied = 0;
  std::unordered_map<std::string, GroundValue> assignment;
};

// Evaluator for the emitted encoding once every parameter is pinned. The
// transition relation is deterministic, so unit propagation through the
// implications fixes each state variable; the result then re-checks every
// assertion. This is not a solver: documents that need search are reported
// as undetermined.
class GroundEvaluator {
public:
  explicit GroundEvaluator(std::string_view smt_text);

  // Propagates the document plus `extra` (more assertions, e.g. pins).
  GroundResult evaluate(std::string_view extra = {}) const;

  // Value of a constant or nullary define-fun under a result's assignment.
  std::optional<GroundValue> value(const GroundResult& r, const std::string& name) const;

  std::size_t assertion_count() const noexcept { return asserts_.size(); }

private:
  struct Context;
  std::optional<GroundValue> eval(const SExpr& e, Context& ctx) const;
  bool force(const SExpr& e, Context& ctx) const;
  void load(const std::vector<SExpr>& top, std::vector<SExpr>& asserts, std::vector<SExpr>& soft,
            std::unordered_map<std::string, std::string>& decls,
            std::unordered_map<std::string, SExpr>& defines) const;

  std::unordered_map<std::string, std::string> decls_;  // name -> sort
  std::unordered_map<std::string, SExpr> defines_;
  std::vector<SExpr> asserts_;
  std::vector<SExpr> soft_;
};

}  // namespace icd
