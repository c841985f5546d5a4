#pragma once

// Deliberately naive re-implementations used as test oracles. None of these
// share code with the library's simulator or synthesis kernels.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "icd/discriminator.hpp"
#include "icd/parameters.hpp"
#include "icd/rational.hpp"
#include "icd/rng.hpp"
#include "icd/signal.hpp"

namespace oracle {

using icd::FeatureSignal;
using icd::Params;
using icd::Rational;

// Exact population variance of vints[max(0,k-9)..k], two-pass.
inline Rational variance(const std::vector<int>& v, std::size_t k) {
  const std::size_t first = k >= 9 ? k - 9 : 0;
  Rational mean(0);
  for (std::size_t i = first; i <= k; ++i) mean += Rational(v[i]);
  const auto n = static_cast<std::int64_t>(k - first + 1);
  mean = mean / Rational(n);
  Rational acc(0);
  for (std::size_t i = first; i <= k; ++i) {
    const Rational dev = Rational(v[i]) - mean;
    acc += dev * dev;
  }
  return acc / Rational(n);
}

// Mean ventricular rate at least 10 BPM above the mean atrial rate, rates
// as exact fractions 60000 / mean interval.
inline bool d5(const FeatureSignal& s, std::size_t k) {
  const int a_end = s.atrial_count[k];
  if (a_end == 0) return false;
  const std::size_t vf = k >= 9 ? k - 9 : 0;
  const int af = std::max(0, a_end - 10);
  Rational vmean(0), amean(0);
  for (std::size_t i = vf; i <= k; ++i) vmean += Rational(s.vints[i]);
  vmean = vmean / Rational(static_cast<std::int64_t>(k - vf + 1));
  for (int i = af; i < a_end; ++i) amean += Rational(s.aints[static_cast<std::size_t>(i)]);
  amean = amean / Rational(a_end - af);
  const Rational vrate = Rational(60000) / vmean;
  const Rational arate = Rational(60000) / amean;
  return vrate >= arate + Rational(10);
}

inline int count_below(const std::vector<int>& v, long from, long to, int th) {
  int c = 0;
  for (long i = from; i <= to; ++i)
    if (v[static_cast<std::size_t>(i)] < th) ++c;
  return c;
}

struct Zone {
  bool mode = false;
  std::int64_t clk = 0;
};

// Th plus the unique successor state admitted by the transition
// implications, found by trying every candidate.
struct NaiveStep {
  Zone vf, vt;
  bool th = false;
};

inline NaiveStep naive_step(const FeatureSignal& s, std::size_t k, const Zone& vf, const Zone& vt, const Params& p) {
  const long K = static_cast<long>(k);
  const int vint = s.vints[k];
  auto start = [&](int th) { return K >= 9 && count_below(s.vints, K - 9, K, th) >= 8; };
  auto persist = [&](int th) { return K >= 9 && count_below(s.vints, K - 9, K - 1, th) >= 5 && vint < th; };

  const bool vf_start = start(p.vf_th_ms), vt_start = start(p.vt_th_ms);
  const bool vf_persist = persist(p.vf_th_ms), vt_persist = persist(p.vt_th_ms);
  const bool vf_clk = vf.clk + vint >= p.vfdur_ms;
  const bool vt_clk = vt.clk + vint >= p.vtdur_ms;
  const bool vf_end = vf_clk || !vf_persist;
  const bool vt_end = vt_clk || !vt_persist;

  bool d6 = false;
  if (K >= 9) {
    int c = 0;
    for (long i = K - 9; i <= K; ++i)
      if (s.fcc[static_cast<std::size_t>(i)] >= static_cast<double>(p.nsrcor_centi) / 100.0) ++c;
    d6 = c >= 3;
  }
  bool d7 = false;
  const int a_end = s.atrial_count[k];
  if (a_end >= 10) {
    const bool afib = count_below(s.aints, a_end - 10, a_end - 1, p.afib_th_ms) >= 6;
    d7 = afib && variance(s.vints, k) <= Rational(p.stb);
  }

  NaiveStep r;
  r.th = (vf.mode && vf_persist && vf_clk) || (vt.mode && vt_persist && vt_clk && (d5(s, k) || !(d6 || d7)));

  auto successor = [&](const Zone& z, bool st, bool end) {
    std::vector<Zone> ok;
    for (bool m : {false, true})
      for (std::int64_t c : {std::int64_t{0}, z.clk + vint, z.clk}) {
        bool sat = true;
        if (st && (!z.mode || end)) sat = sat && m;
        if (!z.mode && !st) sat = sat && !m;
        if (z.mode && !st && end) sat = sat && !m;
        if (z.mode && !end) sat = sat && m && c == z.clk + vint;
        if (!z.mode || end) sat = sat && c == 0;
        if (sat && std::none_of(ok.begin(), ok.end(), [&](const Zone& o) { return o.mode == m && o.clk == c; }))
          ok.push_back({m, c});
      }
    if (ok.size() != 1) throw std::logic_error("transition relation is not deterministic");
    return ok.front();
  };
  r.vf = successor(vf, vf_start, vf_end);
  r.vt = successor(vt, vt_start, vt_end);
  return r;
}

struct NaiveTrace {
  std::vector<bool> th;
  std::vector<Zone> vf, vt;  // state before each step
};

inline NaiveTrace naive_run(const FeatureSignal& s, const Params& p) {
  NaiveTrace t;
  Zone vf, vt;
  for (std::size_t k = 0; k < s.vints.size(); ++k) {
    t.vf.push_back(vf);
    t.vt.push_back(vt);
    const auto r = naive_step(s, k, vf, vt, p);
    t.th.push_back(r.th);
    vf = r.vf;
    vt = r.vt;
  }
  return t;
}

inline bool naive_reach(const FeatureSignal& s, const Params& p) {
  const auto t = naive_run(s, p);
  return std::find(t.th.begin(), t.th.end(), true) != t.th.end();
}

// Random small signal with intervals clustered around the nominal
// thresholds so every predicate flips now and then.
inline FeatureSignal random_signal(icd::SplitMix64& rng, int max_cycles = 40) {
  FeatureSignal s;
  s.id = "rnd-" + std::to_string(rng.next() % 100000);
  const int n = static_cast<int>(rng.uniform_int(1, max_cycles));
  const int centre = static_cast<int>(rng.uniform_int(200, 450));
  const int spread = static_cast<int>(rng.uniform_int(0, 80));
  static const double scores[] = {0.2, 0.5, 0.93, 0.94, 0.95, 0.96, 0.99};
  const double high = rng.uniform01();
  for (int k = 0; k < n; ++k) {
    s.vints.push_back(std::max(100, centre + static_cast<int>(rng.uniform_int(-spread, spread))));
    s.fcc.push_back(rng.bernoulli(high) ? scores[rng.uniform_int(2, 6)] : scores[rng.uniform_int(0, 3)]);
  }
  const int mode = static_cast<int>(rng.uniform_int(0, 2));
  int count = 0;
  for (int k = 0; k < n; ++k) {
    if (mode == 0) {  // 1:1
      s.aints.push_back(s.vints[static_cast<std::size_t>(k)]);
      ++count;
    } else {
      const int per = mode == 1 ? 2 : static_cast<int>(rng.uniform_int(0, 3));
      for (int j = 0; j < per; ++j) s.aints.push_back(static_cast<int>(rng.uniform_int(120, 900)));
      count += per;
    }
    s.atrial_count.push_back(count);
  }
  s.label = rng.bernoulli(0.5) ? icd::Label::RequiresTherapy : icd::Label::NoTherapy;
  return s;
}

inline icd::ParamVector random_vector(icd::SplitMix64& rng, const icd::ParameterDomain& d) {
  icd::ParamVector v;
  for (icd::ParamId id : icd::kAllParams) v[id] = static_cast<int>(rng.uniform_int(1, d[id].size()));
  return v;
}

// Every vector of the box spanned by the free parameters (others nominal).
inline std::vector<icd::ParamVector> all_vectors(const icd::ParameterDomain& d, const icd::FreeMask& free) {
  std::vector<icd::ParamVector> out{icd::ParamVector::nominal(d)};
  for (icd::ParamId id : icd::kAllParams) {
    if (!free[static_cast<std::size_t>(id)]) continue;
    std::vector<icd::ParamVector> next;
    for (const auto& v : out)
      for (int i = 1; i <= d[id].size(); ++i) {
        auto w = v;
        w[id] = i;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

struct BrutePoint {
  int distance;
  Rational eff;
  icd::ParamVector witness;
};

// Pareto front from a full table of (vector, effectiveness): at each
// distance s, the best value within distance s; a point is kept where that
// best strictly improves, witnessed by the smallest vector at exactly s.
inline std::vector<BrutePoint> brute_front(const std::vector<std::pair<icd::ParamVector, Rational>>& table,
                                           const icd::ParameterDomain& d, int limit) {
  std::vector<BrutePoint> out;
  std::optional<Rational> prev;
  for (int s = 0; s <= limit; ++s) {
    std::optional<Rational> best;
    for (const auto& [v, e] : table)
      if (icd::distance(v, d) <= s && (!best || e > *best)) best = e;
    if (!best || (prev && *best <= *prev)) continue;
    std::optional<icd::ParamVector> w;
    for (const auto& [v, e] : table)
      if (icd::distance(v, d) == s && e == *best && (!w || v < *w)) w = v;
    out.push_back({s, *best, *w});
    prev = best;
  }
  return out;
}

// True when a dominates b: no farther, no less effective, strictly better in one.
inline bool dominates(int da, const Rational& ea, int db, const Rational& eb) {
  return da <= db && ea >= eb && (da < db || ea > eb);
}

}  // namespace oracle
