#include "icd/smt_eval.hpp"

#include "icd/error.hpp"

namespace icd {

struct GroundEvaluator::Context {
  std::unordered_map<std::string, std::string> extra_decls;
  std::unordered_map<std::string, SExpr> extra_defines;
  std::unordered_map<std::string, GroundValue> assignment;
  std::unordered_map<std::string, GroundValue> define_memo;
};

GroundEvaluator::GroundEvaluator(std::string_view smt_text) {
  load(parse_sexprs(smt_text), asserts_, soft_, decls_, defines_);
}

void GroundEvaluator::load(const std::vector<SExpr>& top, std::vector<SExpr>& asserts, std::vector<SExpr>& soft,
                           std::unordered_map<std::string, std::string>& decls,
                           std::unordered_map<std::string, SExpr>& defines) const {
  for (const auto& cmd : top) {
    const auto h = cmd.head();
    if (h == "declare-const" && cmd.items.size() == 3) {
      decls[cmd.items[1].atom] = cmd.items[2].str();
    } else if (h == "declare-fun" && cmd.items.size() == 4) {
      if (!cmd.items[2].items.empty()) throw DecodeError("functions with arguments are not ground", cmd.line);
      decls[cmd.items[1].atom] = cmd.items[3].str();
    } else if (h == "define-fun" && cmd.items.size() == 5) {
      if (!cmd.items[2].items.empty()) throw DecodeError("define-fun with arguments is not supported", cmd.line);
      defines[cmd.items[1].atom] = cmd.items[4];
    } else if (h == "assert" && cmd.items.size() == 2) {
      asserts.push_back(cmd.items[1]);
    } else if (h == "assert-soft" && cmd.items.size() >= 2) {
      soft.push_back(cmd.items[1]);
    }
    // Options, objectives and queries do not constrain the ground model.
  }
}

namespace {

bool compare(std::string_view op, const Rational& a, const Rational& b) {
  if (op == "<") return a < b;
  if (op == "<=") return a <= b;
  if (op == ">") return a > b;
  return a >= b;
}

}  // namespace

std::optional<GroundValue> GroundEvaluator::eval(const SExpr& e, Context& ctx) const {
  if (e.is_atom()) {
    if (e.atom == "true") return GroundValue::boolean(true);
    if (e.atom == "false") return GroundValue::boolean(false);
    if (is_numeric_literal(e)) return GroundValue::number(numeric_value(e));
    if (auto it = ctx.assignment.find(e.atom); it != ctx.assignment.end()) return it->second;
    if (auto it = ctx.define_memo.find(e.atom); it != ctx.define_memo.end()) return it->second;
    const SExpr* body = nullptr;
    if (auto it = defines_.find(e.atom); it != defines_.end()) body = &it->second;
    else if (auto it2 = ctx.extra_defines.find(e.atom); it2 != ctx.extra_defines.end()) body = &it2->second;
    if (body) {
      auto v = eval(*body, ctx);
      if (v) ctx.define_memo.emplace(e.atom, *v);
      return v;
    }
    if (decls_.count(e.atom) || ctx.extra_decls.count(e.atom)) return std::nullopt;
    throw DecodeError("undeclared symbol '" + e.atom + "'", e.line);
  }

  if (is_numeric_literal(e)) return GroundValue::number(numeric_value(e));
  const auto h = e.head();
  const auto& a = e.items;
  const std::size_t n = a.size();

  if (h == "not" && n == 2) {
    auto v = eval(a[1], ctx);
    if (!v) return std::nullopt;
    return GroundValue::boolean(!v->b);
  }
  if (h == "and" || h == "or") {
    const bool is_and = h == "and";
    bool unknown = false;
    for (std::size_t i = 1; i < n; ++i) {
      auto v = eval(a[i], ctx);
      if (!v) {
        unknown = true;
        continue;
      }
      if (v->b != is_and) return GroundValue::boolean(!is_and);
    }
    if (unknown) return std::nullopt;
    return GroundValue::boolean(is_and);
  }
  if (h == "=>" && n == 3) {
    auto l = eval(a[1], ctx);
    if (l && !l->b) return GroundValue::boolean(true);
    auto r = eval(a[2], ctx);
    if (r && r->b) return GroundValue::boolean(true);
    if (l && r) return GroundValue::boolean(false);
    return std::nullopt;
  }
  if (h == "ite" && n == 4) {
    auto c = eval(a[1], ctx);
    if (!c) return std::nullopt;
    return eval(c->b ? a[2] : a[3], ctx);
  }
  if ((h == "=" || h == "distinct") && n >= 3) {
    std::vector<GroundValue> vs;
    for (std::size_t i = 1; i < n; ++i) {
      auto v = eval(a[i], ctx);
      if (!v) return std::nullopt;
      vs.push_back(*v);
    }
    bool all_equal = true;
    for (std::size_t i = 1; i < vs.size(); ++i) all_equal = all_equal && vs[i] == vs[0];
    if (h == "=") return GroundValue::boolean(all_equal);
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j)
        if (vs[i] == vs[j]) return GroundValue::boolean(false);
    return GroundValue::boolean(true);
  }
  if ((h == "<" || h == "<=" || h == ">" || h == ">=") && n >= 3) {
    std::vector<Rational> vs;
    for (std::size_t i = 1; i < n; ++i) {
      auto v = eval(a[i], ctx);
      if (!v) return std::nullopt;
      vs.push_back(v->r);
    }
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (!compare(h, vs[i - 1], vs[i])) return GroundValue::boolean(false);
    return GroundValue::boolean(true);
  }
  if ((h == "+" || h == "-" || h == "*" || h == "/") && n >= 2) {
    std::vector<Rational> vs;
    for (std::size_t i = 1; i < n; ++i) {
      auto v = eval(a[i], ctx);
      if (!v) return std::nullopt;
      vs.push_back(v->r);
    }
    if (h == "-" && vs.size() == 1) return GroundValue::number(-vs[0]);
    Rational acc = vs[0];
    for (std::size_t i = 1; i < vs.size(); ++i) {
      if (h == "+") acc = acc + vs[i];
      else if (h == "-") acc = acc - vs[i];
      else if (h == "*") acc = acc * vs[i];
      else {
        if (vs[i] == Rational(0)) throw DecodeError("division by zero", e.line);
        acc = acc / vs[i];
      }
    }
    return GroundValue::number(acc);
  }
  if (h == "to_real" && n == 2) return eval(a[1], ctx);
  throw DecodeError("unsupported term " + e.str().substr(0, 80), e.line);
}

// Assigns the free constants a true formula of this shape requires. Returns
// whether anything new was assigned.
bool GroundEvaluator::force(const SExpr& e, Context& ctx) const {
  auto is_free = [&](const SExpr& x) {
    return x.is_atom() && !ctx.assignment.count(x.atom) && (decls_.count(x.atom) || ctx.extra_decls.count(x.atom));
  };
  if (e.is_atom()) {
    if (!is_free(e)) return false;
    ctx.assignment[e.atom] = GroundValue::boolean(true);
    return true;
  }
  const auto h = e.head();
  if (h == "not" && e.items.size() == 2 && is_free(e.items[1])) {
    ctx.assignment[e.items[1].atom] = GroundValue::boolean(false);
    return true;
  }
  if (h == "and") {
    bool progress = false;
    for (std::size_t i = 1; i < e.items.size(); ++i) progress = force(e.items[i], ctx) || progress;
    return progress;
  }
  if (h == "=" && e.items.size() == 3) {
    for (int side = 1; side <= 2; ++side) {
      const SExpr& target = e.items[static_cast<std::size_t>(side)];
      const SExpr& other = e.items[static_cast<std::size_t>(3 - side)];
      if (!is_free(target)) continue;
      if (auto v = eval(other, ctx)) {
        ctx.assignment[target.atom] = *v;
        return true;
      }
    }
  }
  return false;
}

GroundResult GroundEvaluator::evaluate(std::string_view extra) const {
  Context ctx;
  std::vector<SExpr> extra_asserts;
  std::vector<SExpr> extra_soft;
  if (!extra.empty()) load(parse_sexprs(extra), extra_asserts, extra_soft, ctx.extra_decls, ctx.extra_defines);

  std::vector<const SExpr*> all;
  all.reserve(extra_asserts.size() + asserts_.size());
  // Pins first: they seed the parameters every later implication depends on.
  for (const auto& a : extra_asserts) all.push_back(&a);
  for (const auto& a : asserts_) all.push_back(&a);

  std::vector<const SExpr*> pending = all;
  for (;;) {
    std::vector<const SExpr*> next;
    bool progress = false;
    for (const SExpr* a : pending) {
      if (a->head() == "=>" && a->items.size() == 3) {
        auto ant = eval(a->items[1], ctx);
        if (!ant) {
          next.push_back(a);
          continue;
        }
        if (ant->b) progress = force(a->items[2], ctx) || progress;
        if (!ant->b || eval(a->items[2], ctx)) {
          progress = true;
          continue;
        }
        next.push_back(a);
        continue;
      }
      progress = force(*a, ctx) || progress;
      if (eval(*a, ctx)) {
        progress = true;
        continue;
      }
      next.push_back(a);
    }
    pending.swap(next);
    if (pending.empty() || !progress) break;
  }

  GroundResult r;
  for (const SExpr* a : all) {
    auto v = eval(*a, ctx);
    if (!v) r.undetermined.push_back(a->str().substr(0, 200));
    else if (!v->b) r.violated.push_back(a->str().substr(0, 200));
  }
  for (const std::vector<SExpr>* soft : {&soft_, static_cast<const std::vector<SExpr>*>(&extra_soft)})
    for (const auto& s : *soft) {
      auto v = eval(s, ctx);
      r.soft_satisfied += v && v->b ? 1 : 0;
    }
  for (const std::unordered_map<std::string, std::string>* decls :
       {&decls_, static_cast<const std::unordered_map<std::string, std::string>*>(&ctx.extra_decls)})
    for (const auto& [name, sort] : *decls)
      if (!ctx.assignment.count(name)) r.unassigned.push_back(name);
  r.consistent = r.violated.empty() && r.undetermined.empty();
  r.assignment = std::move(ctx.assignment);
  return r;
}

std::optional<GroundValue> GroundEvaluator::value(const GroundResult& r, const std::string& name) const {
  Context ctx;
  ctx.assignment = r.assignment;
  SExpr atom;
  atom.atom = name;
  return eval(atom, ctx);
}

}  // namespace icd
