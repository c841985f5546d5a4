#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "icd/kernels.hpp"
#include "icd/objectives.hpp"
#include "icd/parameters.hpp"

namespace icd {

enum class Backend { Exact, Random, SmtEmit };

std::string_view backend_name(Backend b);
Backend backend_from_name(std::string_view name);

enum class Execution { Parallel, Serial };

struct SynthesisConfig {
  Backend backend = Backend::Exact;
  FreeMask free_params = kAllFree;
  std::optional<int> max_distance;
  std::uint64_t budget = 0;  // RANDOM: number of sampled vectors
  std::uint64_t seed = 0;
  std::uint64_t enumeration_cap = 50'000'000;
  Execution execution = Execution::Parallel;
};

struct LayerStats {
  int distance = 0;
  std::uint64_t evaluated = 0;            // vectors scanned at exactly this distance
  std::optional<Rational> best_at_layer;  // empty when the shell is empty
  Rational best_so_far;                   // max over layers 0..distance
};

struct SynthesisResult {
  ParetoFront front;
  std::vector<LayerStats> layers;  // EXACT only
  std::uint64_t evaluations = 0;
};

// Highest distance considered: min(max_distance, dist_max).
int distance_limit(const SynthesisConfig& cfg, const ParameterDomain& d);

// Number of vectors the EXACT backend would enumerate.
std::uint64_t exact_grid_size(const ParameterDomain& d, const SynthesisConfig& cfg);

// Distance-layered exhaustive search over the free parameters. Layer s scans
// the vectors at exactly distance s; the running best over layers is the
// maximal effectiveness within box(s). Throws GridTooLargeError above the cap.
SynthesisResult synthesize_exact(const TrainingSet& train, const ParameterDomain& d,
                                 const SynthesisConfig& cfg);

// Seeded uniform sampling of the free-parameter box, plus the nominal point.
SynthesisResult synthesize_random(const TrainingSet& train, const ParameterDomain& d,
                                  const SynthesisConfig& cfg);

// Draws the RANDOM backend's sample sequence (deterministic in seed).
std::vector<ParamVector> random_samples(const ParameterDomain& d, const SynthesisConfig& cfg);

}  // namespace icd
