#include "icd/smt.hpp"

#include <cmath>

#include "icd/discriminator.hpp"
#include "icd/objectives.hpp"
#include "icd/sexpr.hpp"

namespace icd {

std::string SmtMetadata::th_var(std::size_t j, std::size_t k) const {
  return signals.at(j).prefix + "Th_" + std::to_string(k);
}

namespace {

bool is_real_param(ParamId id) { return id == ParamId::NsrCor || id == ParamId::Stb; }

// Engine value of a list entry as an SMT literal of the parameter's sort.
std::string param_literal(const ParameterDomain& d, ParamId id, int index) {
  const std::int64_t e = d.engine_value_at(id, index);
  if (id == ParamId::NsrCor) return smt_real_literal(Rational(e, 100));
  if (id == ParamId::Stb) return smt_real_literal(Rational(e));
  return smt_int_literal(e);
}

// Largest c with c / 100.0 <= fcc. For every threshold on the 0.01 grid,
// fcc >= c'/100 holds exactly when c' <= c, so c / 100 can stand in for the
// raw score in the encoding.
std::int64_t fcc_centi_floor(double fcc) {
  auto c = static_cast<std::int64_t>(std::floor(fcc * 100.0));
  while (static_cast<double>(c + 1) / 100.0 <= fcc) ++c;
  while (static_cast<double>(c) / 100.0 > fcc) --c;
  return c;
}

class Emitter {
public:
  Emitter(const ParameterDomain& d, const FreeMask& free) : d_(d), free_(free) {}

  SmtDocument emit(std::span<const PreparedSignal> train, SmtMode mode) {
    meta_.free_params = free_;
    meta_.dist_max = dist_max(d_);
    for (ParamId id : kAllParams) meta_.param_vars[static_cast<std::size_t>(id)] = std::string(param_name(id));

    out_ += "; Rhythm ID two-zone discrimination, bounded unrolling over " + std::to_string(train.size()) +
            " training signals\n";
    out_ += "(set-logic QF_LIRA)\n";
    out_ += "(set-option :produce-models true)\n";
    if (mode.kind == SmtMode::Kind::Pareto) out_ += "(set-option :opt.priority pareto)\n";
    params();
    distance_ladder();

    const auto baseline = baseline_reach(train, d_);
    for (std::size_t j = 0; j < train.size(); ++j) signal(j, train[j], baseline[j]);

    meta_.body_size = out_.size();
    footer(mode);
    return {std::move(out_), std::move(meta_)};
  }

private:
  const std::string& var(ParamId id) const { return meta_.param_vars[static_cast<std::size_t>(id)]; }

  void params() {
    out_ += "\n; programmable parameter values (thresholds and durations in ms)\n";
    for (ParamId id : kAllParams)
      out_ += "(declare-const " + var(id) + (is_real_param(id) ? " Real)\n" : " Int)\n");
    for (ParamId id : kAllParams) {
      out_ += "(assert (or";
      for (int i = 1; i <= d_[id].size(); ++i) out_ += " (= " + var(id) + " " + param_literal(d_, id, i) + ")";
      out_ += "))\n";
    }
    for (ParamId id : kAllParams) {
      if (free_[static_cast<std::size_t>(id)]) continue;
      out_ += "(assert (= " + var(id) + " " + param_literal(d_, id, d_[id].nominal_index) + "))\n";
    }
  }

  // dist <= s restricts every parameter to the index box of radius s. For
  // BPM thresholds the ms order is reversed, so the bounds swap.
  void distance_ladder() {
    const std::string& dist = meta_.dist_var;
    out_ += "\n; distance ladder\n";
    out_ += "(declare-const " + dist + " Int)\n";
    out_ += "(assert (and (<= 0 " + dist + ") (<= " + dist + " " + std::to_string(meta_.dist_max) + ")))\n";
    for (int s = 0; s <= meta_.dist_max; ++s) {
      const Box b = box(s, d_);
      out_ += "(assert (=> (<= " + dist + " " + std::to_string(s) + ") (and";
      for (ParamId id : kAllParams) {
        const auto& r = b[static_cast<std::size_t>(id)];
        int lo = r.lo;
        int hi = r.hi;
        if (d_.engine_value_at(id, lo) > d_.engine_value_at(id, hi)) std::swap(lo, hi);
        out_ += " (<= " + param_literal(d_, id, lo) + " " + var(id) + ") (<= " + var(id) + " " +
                param_literal(d_, id, hi) + ")";
      }
      out_ += ")))\n";
    }
  }

  static std::string name(const std::string& prefix, const char* what, std::size_t k) {
    return prefix + what + "_" + std::to_string(k);
  }

  // (>= (+ (ite (< v_i TH) 1 0) ...) need) over the given interval values.
  std::string count_at_least(const std::vector<int>& values, std::size_t first, std::size_t last,
                             const std::string& threshold, int need) const {
    std::string s = "(>= (+";
    for (std::size_t i = first; i <= last; ++i)
      s += " (ite (< " + std::to_string(values[i]) + " " + threshold + ") 1 0)";
    return s + ") " + std::to_string(need) + ")";
  }

  void zone(const std::string& p, std::size_t k, const FeatureSignal& s, const char* tag, ParamId th,
            ParamId dur) {
    const std::string z(tag);
    const std::string& th_var = var(th);
    const std::string vint = std::to_string(s.vints[k]);
    const bool full = k + 1 >= kWindow;

    const std::string start =
        full ? count_at_least(s.vints, k + 1 - kWindow, k, th_var, 8) : std::string("false");
    const std::string persist = full ? "(and " + count_at_least(s.vints, k + 1 - kWindow, k - 1, th_var, 5) +
                                           " (< " + vint + " " + th_var + "))"
                                     : std::string("false");
    out_ += "(define-fun " + name(p, (z + "start").c_str(), k) + " () Bool " + start + ")\n";
    out_ += "(define-fun " + name(p, (z + "persist").c_str(), k) + " () Bool " + persist + ")\n";
    out_ += "(define-fun " + name(p, (z + "clkOver").c_str(), k) + " () Bool (>= (+ " +
            name(p, ("t" + z).c_str(), k) + " " + vint + ") " + var(dur) + "))\n";
    out_ += "(define-fun " + name(p, (z + "end").c_str(), k) + " () Bool (or " + name(p, (z + "clkOver").c_str(), k) +
            " (not " + name(p, (z + "persist").c_str(), k) + ")))\n";
  }

  void transitions(const std::string& p, std::size_t k, const FeatureSignal& s, const char* tag) {
    const std::string z(tag);
    const std::string mode_k = name(p, (z + "d").c_str(), k);
    const std::string mode_n = name(p, (z + "d").c_str(), k + 1);
    const std::string clk_k = name(p, ("t" + z).c_str(), k);
    const std::string clk_n = name(p, ("t" + z).c_str(), k + 1);
    const std::string start = name(p, (z + "start").c_str(), k);
    const std::string end = name(p, (z + "end").c_str(), k);
    const std::string vint = std::to_string(s.vints[k]);
    out_ += "(assert (=> (and " + start + " (or (not " + mode_k + ") " + end + ")) " + mode_n + "))\n";
    out_ += "(assert (=> (and (not " + mode_k + ") (not " + start + ")) (not " + mode_n + ")))\n";
    out_ += "(assert (=> (and " + mode_k + " (not " + start + ") " + end + ") (not " + mode_n + ")))\n";
    out_ += "(assert (=> (and " + mode_k + " (not " + end + ")) (and " + mode_n + " (= " + clk_n + " (+ " + clk_k +
            " " + vint + ")))))\n";
    out_ += "(assert (=> (or (not " + mode_k + ") " + end + ") (= " + clk_n + " 0)))\n";
  }

  void signal(std::size_t j, const PreparedSignal& ps, bool nominal_reach) {
    const FeatureSignal& s = ps.signal;
    const std::string p = "s" + std::to_string(j + 1) + "_";
    meta_.signals.push_back({s.id, p, s.cycles(), nominal_reach});
    const std::size_t n = s.cycles();

    out_ += "\n; signal " + std::to_string(j + 1) + ": " + s.id + " (" + std::to_string(n) + " cycles)\n";
    for (std::size_t k = 0; k <= n; ++k) {
      out_ += "(declare-const " + name(p, "VFd", k) + " Bool)\n";
      out_ += "(declare-const " + name(p, "VTd", k) + " Bool)\n";
      out_ += "(declare-const " + name(p, "tVF", k) + " Int)\n";
      out_ += "(declare-const " + name(p, "tVT", k) + " Int)\n";
    }
    out_ += "(assert (and (not " + name(p, "VFd", 0) + ") (not " + name(p, "VTd", 0) + ") (= " + name(p, "tVF", 0) +
            " 0) (= " + name(p, "tVT", 0) + " 0)))\n";

    for (std::size_t k = 0; k < n; ++k) {
      zone(p, k, s, "VF", ParamId::VfTh, ParamId::VfDur);
      zone(p, k, s, "VT", ParamId::VtTh, ParamId::VtDur);

      std::string d6 = "false";
      if (k + 1 >= kWindow) {
        d6 = "(>= (+";
        for (std::size_t i = k + 1 - kWindow; i <= k; ++i)
          d6 += " (ite (>= " + smt_real_literal(Rational(fcc_centi_floor(s.fcc[i]), 100)) + " " +
                var(ParamId::NsrCor) + ") 1 0)";
        d6 += ") 3)";
      }
      std::string d7 = "false";
      const auto a_end = static_cast<std::size_t>(s.atrial_count[k]);
      if (a_end >= kWindow) {
        const auto vv = variance_fraction(s.vints, k);
        d7 = "(and " + count_at_least(s.aints, a_end - kWindow, a_end - 1, var(ParamId::AfibTh), 6) + " (<= " +
             smt_real_literal(Rational(vv.num, vv.den)) + " " + var(ParamId::Stb) + "))";
      }
      out_ += "(define-fun " + name(p, "D6", k) + " () Bool " + d6 + ")\n";
      out_ += "(define-fun " + name(p, "D7", k) + " () Bool " + d7 + ")\n";
      const std::string d5 = ps.derived.d5[k] ? "true" : "false";
      out_ += "(define-fun " + name(p, "Th", k) + " () Bool (or (and " + name(p, "VFd", k) + " " +
              name(p, "VFpersist", k) + " " + name(p, "VFclkOver", k) + ") (and " + name(p, "VTd", k) + " " +
              name(p, "VTpersist", k) + " " + name(p, "VTclkOver", k) + " (or " + d5 + " (not (or " +
              name(p, "D6", k) + " " + name(p, "D7", k) + "))))))\n";

      transitions(p, k, s, "VF");
      transitions(p, k, s, "VT");
    }

    const std::string eff = "effective_" + std::to_string(j + 1);
    meta_.soft_ids.push_back(eff);
    out_ += "(declare-const " + eff + " Bool)\n";
    out_ += "(assert (= " + eff + " (= " + (nominal_reach ? "true" : "false") + " (not (or";
    for (std::size_t k = 0; k < n; ++k) out_ += " " + name(p, "Th", k);
    out_ += ")))))\n";
    out_ += "(assert-soft " + eff + " :weight 1 :id " + meta_.soft_group + ")\n";
  }

  void footer(SmtMode mode) {
    out_ += "\n; objectives\n";
    if (mode.kind == SmtMode::Kind::MaxEffAtDist) {
      out_ += "(assert (<= " + meta_.dist_var + " " + std::to_string(mode.distance) + "))\n";
      out_ += "(check-sat)\n(get-model)\n(get-objectives)\n";
      return;
    }
    out_ += "(minimize " + meta_.dist_var + ")\n";
    // At most dist_max + 1 Pareto points exist; each check-sat yields the next one.
    for (int i = 0; i <= meta_.dist_max; ++i) out_ += "(check-sat)\n(get-model)\n(get-objectives)\n";
  }

  const ParameterDomain& d_;
  FreeMask free_;
  SmtMetadata meta_;
  std::string out_;
};

}  // namespace

SmtDocument emit_smt(std::span<const PreparedSignal> train, const ParameterDomain& d, SmtMode mode,
                     const FreeMask& free) {
  return Emitter(d, free).emit(train, mode);
}

std::string pin_assertions(const SmtDocument& doc, const ParamVector& v, const ParameterDomain& d) {
  std::string out = "; pinned parameter vector\n";
  for (ParamId id : kAllParams)
    out += "(assert (= " + doc.metadata.param_vars[static_cast<std::size_t>(id)] + " " +
           param_literal(d, id, v[id]) + "))\n";
  out += "(assert (= " + doc.metadata.dist_var + " " + std::to_string(distance(v, d)) + "))\n";
  return out;
}

std::string pinned_query(const SmtDocument& doc, const ParamVector& v, const ParameterDomain& d) {
  std::string out = doc.body();
  out += pin_assertions(doc, v, d);
  out += "(check-sat)\n(get-value (";
  const auto& meta = doc.metadata;
  for (std::size_t j = 0; j < meta.signals.size(); ++j) {
    for (std::size_t k = 0; k < meta.signals[j].cycles; ++k) out += meta.th_var(j, k) + " ";
    out += meta.soft_ids[j] + " ";
  }
  out += "))\n";
  return out;
}

}  // namespace icd
