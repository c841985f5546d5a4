#include "icd/discriminator.hpp"

#include <ostream>

namespace icd {

namespace {

// Number of vints[first..last] strictly below threshold.
int count_below(const std::vector<int>& v, std::size_t first, std::size_t last, int threshold) {
  int n = 0;
  for (std::size_t i = first; i <= last; ++i) n += v[i] < threshold ? 1 : 0;
  return n;
}

bool start(const FeatureSignal& s, std::size_t k, int threshold) {
  return k + 1 >= kWindow && count_below(s.vints, k + 1 - kWindow, k, threshold) >= 8;
}

bool persist(const FeatureSignal& s, std::size_t k, int threshold) {
  return k + 1 >= kWindow && s.vints[k] < threshold &&
         count_below(s.vints, k + 1 - kWindow, k - 1, threshold) >= 5;
}

}  // namespace

bool vf_start(const FeatureSignal& s, std::size_t k, const Params& p) { return start(s, k, p.vf_th_ms); }
bool vt_start(const FeatureSignal& s, std::size_t k, const Params& p) { return start(s, k, p.vt_th_ms); }
bool vf_persist(const FeatureSignal& s, std::size_t k, const Params& p) { return persist(s, k, p.vf_th_ms); }
bool vt_persist(const FeatureSignal& s, std::size_t k, const Params& p) { return persist(s, k, p.vt_th_ms); }

bool vf_clk_over(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p) {
  return st.t_vf + s.vints[k] >= p.vfdur_ms;
}

bool vt_clk_over(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p) {
  return st.t_vt + s.vints[k] >= p.vtdur_ms;
}

bool vf_end(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p) {
  return vf_clk_over(st, s, k, p) || !vf_persist(s, k, p);
}

bool vt_end(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p) {
  return vt_clk_over(st, s, k, p) || !vt_persist(s, k, p);
}

bool d6(const FeatureSignal& s, std::size_t k, const Params& p) {
  if (k + 1 < kWindow) return false;
  const double threshold = p.nsrcor();
  int n = 0;
  for (std::size_t i = k + 1 - kWindow; i <= k; ++i) n += s.fcc[i] >= threshold ? 1 : 0;
  return n >= 3;
}

bool d7(const FeatureSignal& s, const DerivedFeatures& d, std::size_t k, const Params& p) {
  const auto a_end = static_cast<std::size_t>(s.atrial_count[k]);
  if (a_end < kWindow) return false;
  return count_below(s.aints, a_end - kWindow, a_end - 1, p.afib_th_ms) >= 6 &&
         d.vvar[k] <= static_cast<double>(p.stb);
}

bool therapy_predicate(const AlgState& st, const FeatureSignal& s, const DerivedFeatures& d,
                       std::size_t k, const Params& p) {
  if (st.vfd && vf_persist(s, k, p) && vf_clk_over(st, s, k, p)) return true;
  if (!(st.vtd && vt_persist(s, k, p) && vt_clk_over(st, s, k, p))) return false;
  return d.d5[k] || !(d6(s, k, p) || d7(s, d, k, p));
}

StepResult step(const AlgState& st, const FeatureSignal& s, const DerivedFeatures& d,
                std::size_t k, const Params& p) {
  const int vint = s.vints[k];
  const bool f_start = vf_start(s, k, p);
  const bool f_end = vf_end(st, s, k, p);
  const bool t_start = vt_start(s, k, p);
  const bool t_end = vt_end(st, s, k, p);

  StepResult r;
  r.therapy = therapy_predicate(st, s, d, k, p);

  const bool vf_stays = st.vfd && !f_end;
  r.next.vfd = (f_start && (!st.vfd || f_end)) || vf_stays;
  r.next.t_vf = vf_stays ? st.t_vf + vint : 0;

  const bool vt_stays = st.vtd && !t_end;
  r.next.vtd = (t_start && (!st.vtd || t_end)) || vt_stays;
  r.next.t_vt = vt_stays ? st.t_vt + vint : 0;
  return r;
}

TherapySignal run(const FeatureSignal& s, const DerivedFeatures& d, const Params& p) {
  TherapySignal out;
  out.bits.resize(s.cycles());
  AlgState st;
  for (std::size_t k = 0; k < s.cycles(); ++k) {
    const auto r = step(st, s, d, k, p);
    out.bits[k] = r.therapy;
    st = r.next;
  }
  return out;
}

TherapySignal run(const PreparedSignal& s, const Params& p) { return run(s.signal, s.derived, p); }

bool reaches_therapy(const PreparedSignal& ps, const Params& p) {
  const FeatureSignal& s = ps.signal;
  AlgState st;
  for (std::size_t k = 0; k < s.cycles(); ++k) {
    const auto r = step(st, s, ps.derived, k, p);
    if (r.therapy) return true;
    st = r.next;
  }
  return false;
}

void write_trace(std::ostream& out, const PreparedSignal& ps, const Params& p) {
  AlgState st;
  for (std::size_t k = 0; k < ps.cycles(); ++k) {
    const auto r = step(st, ps.signal, ps.derived, k, p);
    out << k << '\t' << ps.signal.vints[k] << '\t' << int(st.vfd) << '\t' << int(st.vtd) << '\t'
        << st.t_vf << '\t' << st.t_vt << '\t' << int(r.therapy) << '\n';
    st = r.next;
  }
}

}  // namespace icd
