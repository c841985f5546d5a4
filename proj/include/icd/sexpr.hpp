#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "icd/rational.hpp"

namespace icd {

// Minimal SMT-LIB2 s-expression tree. Atoms keep their source text; string
// literals and |quoted| symbols are unquoted.
struct SExpr {
  std::string atom;
  std::vector<SExpr> items;
  bool is_list = false;
  int line = 0;

  bool is_atom() const noexcept { return !is_list; }
  bool is_atom(std::string_view s) const noexcept { return !is_list && atom == s; }
  // Head symbol of a list, empty otherwise.
  std::string_view head() const noexcept {
    return is_list && !items.empty() && items[0].is_atom() ? std::string_view(items[0].atom) : std::string_view();
  }
  std::string str() const;
};

// Parses a sequence of top-level expressions. Throws DecodeError with the
// line of the offending token.
std::vector<SExpr> parse_sexprs(std::string_view text);

// Numeral, decimal, (- x) or (/ x y) with numeric arguments.
bool is_numeric_literal(const SExpr& e);
Rational numeric_value(const SExpr& e);

// Exact decimal for an SMT literal: integers print bare, other values as
// "(/ n.0 d.0)" unless the value is a terminating decimal.
std::string smt_real_literal(const Rational& r);
std::string smt_int_literal(std::int64_t v);

}  // namespace icd
