#include "icd/kernels.hpp"

#include <omp.h>

#include "icd/objectives.hpp"

namespace icd {

TrainingSet::TrainingSet(std::vector<PreparedSignal> signals, const ParameterDomain& d)
    : signals_(std::move(signals)), baseline_(baseline_reach(signals_, d)) {}

bool reaches_therapy_fast(const PreparedSignal& ps, const Params& p) {
  const FeatureSignal& s = ps.signal;
  const int* v = s.vints.data();
  const std::size_t n = s.cycles();
  int vf_fast = 0;
  int vt_fast = 0;
  bool vfd = false;
  bool vtd = false;
  std::int64_t t_vf = 0;
  std::int64_t t_vt = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int x = v[k];
    const bool x_vf = x < p.vf_th_ms;
    const bool x_vt = x < p.vt_th_ms;
    vf_fast += x_vf;
    vt_fast += x_vt;
    if (k >= kWindow) {
      vf_fast -= v[k - kWindow] < p.vf_th_ms;
      vt_fast -= v[k - kWindow] < p.vt_th_ms;
    }
    const bool full = k + 1 >= kWindow;

    // The persist window excludes the current interval, which is tested on its own.
    const bool f_start = full && vf_fast >= 8;
    const bool f_persist = full && x_vf && vf_fast - 1 >= 5;
    const bool f_clk = t_vf + x >= p.vfdur_ms;
    const bool f_end = f_clk || !f_persist;
    const bool t_start = full && vt_fast >= 8;
    const bool t_persist = full && x_vt && vt_fast - 1 >= 5;
    const bool t_clk = t_vt + x >= p.vtdur_ms;
    const bool t_end = t_clk || !t_persist;

    if (vfd && f_persist && f_clk) return true;
    if (vtd && t_persist && t_clk && (ps.derived.d5[k] || !(d6(s, k, p) || d7(s, ps.derived, k, p))))
      return true;

    const bool vf_stays = vfd && !f_end;
    t_vf = vf_stays ? t_vf + x : 0;
    vfd = (f_start && (!vfd || f_end)) || vf_stays;
    const bool vt_stays = vtd && !t_end;
    t_vt = vt_stays ? t_vt + x : 0;
    vtd = (t_start && (!vtd || t_end)) || vt_stays;
  }
  return false;
}

std::uint32_t count_flips_reference(const TrainingSet& set, const Params& p) {
  std::uint32_t flips = 0;
  for (std::size_t j = 0; j < set.size(); ++j)
    flips += reachability(run(set.signals()[j], p)) != set.baseline()[j];
  return flips;
}

std::uint32_t count_flips(const TrainingSet& set, const Params& p) {
  std::uint32_t flips = 0;
  for (std::size_t j = 0; j < set.size(); ++j)
    flips += reaches_therapy_fast(set.signals()[j], p) != set.baseline()[j];
  return flips;
}

std::vector<std::uint32_t> evaluate_serial(const TrainingSet& set, const ParameterDomain& d,
                                           std::span<const ParamVector> candidates) {
  std::vector<std::uint32_t> out(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i)
    out[i] = count_flips_reference(set, to_params(candidates[i], d));
  return out;
}

std::vector<std::uint32_t> evaluate_parallel(const TrainingSet& set, const ParameterDomain& d,
                                             std::span<const ParamVector> candidates) {
  std::vector<std::uint32_t> out(candidates.size());
  const auto n = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = count_flips(set, to_params(candidates[static_cast<std::size_t>(i)], d));
  return out;
}

ParamVector box_vector(const Box& b, std::uint64_t offset) {
  ParamVector v;
  for (std::size_t i = kParamCount; i-- > 0;) {
    const auto w = static_cast<std::uint64_t>(b[i].width());
    v.idx[i] = b[i].lo + static_cast<int>(offset % w);
    offset /= w;
  }
  return v;
}

namespace {

// True when candidate (flips, v) should replace the current best.
bool better(std::uint32_t flips, const ParamVector& v, const ShellBest& best) {
  if (!best.witness) return true;
  if (flips != best.flips) return flips > best.flips;
  return v < *best.witness;
}

void merge(ShellBest& into, const ShellBest& other) {
  into.shell_size += other.shell_size;
  if (other.witness && better(other.flips, *other.witness, into)) {
    into.flips = other.flips;
    into.witness = other.witness;
  }
}

}  // namespace

ShellBest best_in_shell_serial(const TrainingSet& set, const ParameterDomain& d, const Box& b, int s) {
  ShellBest best;
  const std::uint64_t total = box_size(b);
  for (std::uint64_t i = 0; i < total; ++i) {
    const ParamVector v = box_vector(b, i);
    if (distance(v, d) != s) continue;
    ++best.shell_size;
    const std::uint32_t flips = count_flips_reference(set, to_params(v, d));
    if (better(flips, v, best)) {
      best.flips = flips;
      best.witness = v;
    }
  }
  return best;
}

ShellBest best_in_shell_parallel(const TrainingSet& set, const ParameterDomain& d, const Box& b, int s) {
  ShellBest best;
  const auto total = static_cast<std::int64_t>(box_size(b));
#pragma omp parallel
  {
    ShellBest local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t i = 0; i < total; ++i) {
      const ParamVector v = box_vector(b, static_cast<std::uint64_t>(i));
      if (distance(v, d) != s) continue;
      ++local.shell_size;
      const std::uint32_t flips = count_flips(set, to_params(v, d));
      if (better(flips, v, local)) {
        local.flips = flips;
        local.witness = v;
      }
    }
#pragma omp critical(icd_shell_merge)
    merge(best, local);
  }
  return best;
}

std::optional<std::uint32_t> EffectivenessCache::find(const ParamVector& v) const {
  Shard& sh = shard(v);
  std::lock_guard lock(sh.mu);
  auto it = sh.map.find(v);
  if (it == sh.map.end()) return std::nullopt;
  return it->second;
}

void EffectivenessCache::insert(const ParamVector& v, std::uint32_t flips) {
  Shard& sh = shard(v);
  std::lock_guard lock(sh.mu);
  sh.map.emplace(v, flips);
}

std::size_t EffectivenessCache::size() const {
  std::size_t n = 0;
  for (auto& sh : shards_) {
    std::lock_guard lock(sh.mu);
    n += sh.map.size();
  }
  return n;
}

}  // namespace icd
