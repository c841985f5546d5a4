#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "icd/discriminator.hpp"
#include "icd/signal.hpp"

namespace icd {

enum class AtrialMode {
  Tracking,     // 1:1, one atrial interval equal to each ventricular interval
  Afib,         // fast irregular atria, independent of the ventricles
  Flutter,      // 2:1, two atrial intervals per ventricular cycle
  Dissociated,  // regular atria independent of (and slower than) the ventricles
};

std::string_view atrial_mode_name(AtrialMode m);
AtrialMode atrial_mode_from_name(std::string_view name);

struct Range {
  int lo = 0;
  int hi = 0;
  bool operator==(const Range&) const = default;
};

// Recipe for one synthetic arrhythmia class.
struct ConditionSpec {
  std::string name;
  Label label = Label::NoTherapy;
  Range vint_range;       // ms, per-signal base interval
  int vint_jitter = 0;    // ms, per-cycle uniform +-jitter
  AtrialMode a_to_v = AtrialMode::Tracking;
  Range aint_range;       // ms, AFIB / DISSOCIATED atria
  double fcc_high_prob = 0.0;
  double duration_s = 30.0;

  // Throws DomainError on violated invariants.
  void validate() const;
  bool operator==(const ConditionSpec&) const = default;
};

nlohmann::json spec_to_json(const ConditionSpec& spec);
ConditionSpec spec_from_json(const nlohmann::json& j);
ConditionSpec load_spec(const std::filesystem::path& path);

// n signals, deterministic in (spec, n, seed). Each signal draws from its own
// stream derived from the seed, so generation parallelizes across signals.
std::vector<FeatureSignal> generate(const ConditionSpec& spec, int n, std::uint64_t seed);

// Shipped archetypes. Interval ranges are our own convention.
std::vector<ConditionSpec> builtin_conditions();
const ConditionSpec& builtin_condition(std::string_view name);

// Fraction of signals whose therapy reachability under `p` disagrees with
// their label.
double misclassification_rate(const std::vector<FeatureSignal>& signals, const Params& p = {});

struct CalibratedSet {
  std::vector<FeatureSignal> signals;
  std::uint64_t seed_used = 0;
  int attempts = 1;   // > 1 means earlier seeds failed calibration
  double misclassification = 0.0;
};

// generate() with the nominal-parameter calibration check. A failing set is
// regenerated from the next seed of a stream derived from `seed`; the number
// of attempts is reported. Throws Error when every attempt fails.
CalibratedSet generate_calibrated(const ConditionSpec& spec, int n, std::uint64_t seed,
                                  double max_rate = 0.05, int max_attempts = 8);

}  // namespace icd
