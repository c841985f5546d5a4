#include "icd/synthesis.hpp"

#include <algorithm>

#include "icd/error.hpp"
#include "icd/rng.hpp"

namespace icd {

std::string_view backend_name(Backend b) {
  switch (b) {
    case Backend::Exact: return "exact";
    case Backend::Random: return "random";
    case Backend::SmtEmit: return "smt";
  }
  return "?";
}

Backend backend_from_name(std::string_view name) {
  if (name == "exact") return Backend::Exact;
  if (name == "random") return Backend::Random;
  if (name == "smt") return Backend::SmtEmit;
  throw Error("unknown backend '" + std::string(name) + "' (expected exact, random or smt)");
}

int distance_limit(const SynthesisConfig& cfg, const ParameterDomain& d) {
  const int dm = dist_max(d);
  if (!cfg.max_distance) return dm;
  if (*cfg.max_distance < 0) throw Error("max distance must be non-negative");
  return std::min(*cfg.max_distance, dm);
}

std::uint64_t exact_grid_size(const ParameterDomain& d, const SynthesisConfig& cfg) {
  return box_size(restricted_box(distance_limit(cfg, d), d, cfg.free_params));
}

SynthesisResult synthesize_exact(const TrainingSet& train, const ParameterDomain& d,
                                 const SynthesisConfig& cfg) {
  if (train.size() == 0) throw Error("training set is empty");
  const int limit = distance_limit(cfg, d);
  const std::uint64_t grid = exact_grid_size(d, cfg);
  if (grid > cfg.enumeration_cap) throw GridTooLargeError(grid, cfg.enumeration_cap);

  SynthesisResult result;
  std::vector<FrontPoint> candidates;
  Rational running;
  for (int s = 0; s <= limit; ++s) {
    if (running == Rational(1)) {
      // Every signal is already flipped; outer shells cannot improve.
      LayerStats skipped;
      skipped.distance = s;
      skipped.best_so_far = running;
      result.layers.push_back(skipped);
      continue;
    }
    const Box b = restricted_box(s, d, cfg.free_params);
    const ShellBest best = cfg.execution == Execution::Parallel ? best_in_shell_parallel(train, d, b, s)
                                                                : best_in_shell_serial(train, d, b, s);
    LayerStats stats;
    stats.distance = s;
    stats.evaluated = best.shell_size;
    result.evaluations += best.shell_size;
    if (best.witness) {
      const Rational e = train.as_effectiveness(best.flips);
      stats.best_at_layer = e;
      running = std::max(running, e);
      candidates.push_back({s, e, *best.witness});
    }
    stats.best_so_far = running;
    result.layers.push_back(stats);
  }
  result.front = pareto_filter(std::move(candidates));
  return result;
}

std::vector<ParamVector> random_samples(const ParameterDomain& d, const SynthesisConfig& cfg) {
  const Box b = restricted_box(distance_limit(cfg, d), d, cfg.free_params);
  SplitMix64 rng(cfg.seed);
  std::vector<ParamVector> out;
  out.reserve(cfg.budget);
  for (std::uint64_t i = 0; i < cfg.budget; ++i) {
    ParamVector v;
    for (std::size_t p = 0; p < kParamCount; ++p)
      v.idx[p] = static_cast<int>(rng.uniform_int(b[p].lo, b[p].hi));
    out.push_back(v);
  }
  return out;
}

SynthesisResult synthesize_random(const TrainingSet& train, const ParameterDomain& d,
                                  const SynthesisConfig& cfg) {
  if (train.size() == 0) throw Error("training set is empty");
  const auto samples = random_samples(d, cfg);

  // Unique vectors only; repeated draws reuse the cached count.
  EffectivenessCache cache;
  std::vector<ParamVector> unique;
  {
    std::vector<ParamVector> sorted(samples);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    unique = std::move(sorted);
  }
  const auto flips = cfg.execution == Execution::Parallel ? evaluate_parallel(train, d, unique)
                                                          : evaluate_serial(train, d, unique);
  for (std::size_t i = 0; i < unique.size(); ++i) cache.insert(unique[i], flips[i]);

  SynthesisResult result;
  result.evaluations = unique.size();
  std::vector<FrontPoint> candidates;
  candidates.push_back({0, Rational(0), ParamVector::nominal(d)});
  for (const auto& v : samples)
    candidates.push_back({distance(v, d), train.as_effectiveness(*cache.find(v)), v});
  result.front = pareto_filter(std::move(candidates));
  return result;
}

}  // namespace icd
