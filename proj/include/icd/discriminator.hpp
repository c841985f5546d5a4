#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "icd/signal.hpp"

namespace icd {

// Engine-unit parameter values consumed by the discrimination algorithm.
// Detection thresholds are interval lengths: a shorter interval is a faster
// beat, so "faster than VF_th" reads vint < vf_th_ms.
struct Params {
  int vf_th_ms = 300;
  int vt_th_ms = 375;
  int vfdur_ms = 1000;
  int vtdur_ms = 2500;
  int nsrcor_centi = 94;  // Rhythm Match threshold x 100
  int afib_th_ms = 353;
  int stb = 20;           // ms^2

  double nsrcor() const noexcept { return static_cast<double>(nsrcor_centi) / 100.0; }
  bool operator==(const Params&) const = default;
};

struct AlgState {
  bool vfd = false;
  bool vtd = false;
  std::int64_t t_vf = 0;
  std::int64_t t_vt = 0;

  bool operator==(const AlgState&) const = default;
};

struct TherapySignal {
  std::vector<bool> bits;

  std::size_t size() const noexcept { return bits.size(); }
  bool operator[](std::size_t k) const { return bits[k]; }
  bool operator==(const TherapySignal&) const = default;
};

// Window predicates. All of them require a full ten-cycle window and are
// false for k < 9.
bool vf_start(const FeatureSignal& s, std::size_t k, const Params& p);
bool vt_start(const FeatureSignal& s, std::size_t k, const Params& p);
bool vf_persist(const FeatureSignal& s, std::size_t k, const Params& p);
bool vt_persist(const FeatureSignal& s, std::size_t k, const Params& p);
bool vf_clk_over(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p);
bool vt_clk_over(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p);
bool vf_end(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p);
bool vt_end(const AlgState& st, const FeatureSignal& s, std::size_t k, const Params& p);

// Rhythm Match: at least 3 of the last 10 scores reach the threshold.
bool d6(const FeatureSignal& s, std::size_t k, const Params& p);
// AFib rate + stable V rate: needs ten completed atrial intervals.
bool d7(const FeatureSignal& s, const DerivedFeatures& d, std::size_t k, const Params& p);

bool therapy_predicate(const AlgState& st, const FeatureSignal& s, const DerivedFeatures& d,
                       std::size_t k, const Params& p);

struct StepResult {
  AlgState next;
  bool therapy = false;  // evaluated on the pre-step state
};

StepResult step(const AlgState& st, const FeatureSignal& s, const DerivedFeatures& d,
                std::size_t k, const Params& p);

TherapySignal run(const FeatureSignal& s, const DerivedFeatures& d, const Params& p);
TherapySignal run(const PreparedSignal& s, const Params& p);

// Same fold as run(), stopping at the first therapy bit.
bool reaches_therapy(const PreparedSignal& s, const Params& p);

// One line per cycle: k, vint, VFd, VTd, tVF, tVT, Th (tab separated, state
// before the step).
void write_trace(std::ostream& out, const PreparedSignal& s, const Params& p);

}  // namespace icd
