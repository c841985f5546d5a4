#pragma once

#include <array>
#include <cstdint>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "icd/discriminator.hpp"
#include "icd/parameters.hpp"
#include "icd/rational.hpp"
#include "icd/signal.hpp"

namespace icd {

// Signals plus their nominal-parameter reachability, shared read-only by all
// evaluation kernels.
class TrainingSet {
public:
  TrainingSet(std::vector<PreparedSignal> signals, const ParameterDomain& d);

  std::span<const PreparedSignal> signals() const noexcept { return signals_; }
  const std::vector<bool>& baseline() const noexcept { return baseline_; }
  std::size_t size() const noexcept { return signals_.size(); }
  Rational as_effectiveness(std::uint32_t flips) const {
    return Rational(flips, static_cast<std::int64_t>(signals_.size()));
  }

private:
  std::vector<PreparedSignal> signals_;
  std::vector<bool> baseline_;
};

// Sliding-window variant of the discriminator fold: O(1) window updates per
// cycle and early exit on the first therapy bit. Must agree with
// reachability(run(s, p)) on every input.
bool reaches_therapy_fast(const PreparedSignal& s, const Params& p);

// Number of signals whose reachability differs from the baseline.
// The reference path simulates with run(); the fast path uses the kernel above.
std::uint32_t count_flips_reference(const TrainingSet& set, const Params& p);
std::uint32_t count_flips(const TrainingSet& set, const Params& p);

// The serial variants are the reference path (full run() per signal, one
// thread); the parallel ones use the sliding-window kernel under OpenMP.
std::vector<std::uint32_t> evaluate_serial(const TrainingSet& set, const ParameterDomain& d,
                                           std::span<const ParamVector> candidates);
std::vector<std::uint32_t> evaluate_parallel(const TrainingSet& set, const ParameterDomain& d,
                                             std::span<const ParamVector> candidates);

// Best candidate among the vectors of a box lying at exactly distance s.
// Ties keep the lexicographically smallest vector, so the result does not
// depend on scheduling.
struct ShellBest {
  std::uint64_t shell_size = 0;
  std::uint32_t flips = 0;
  std::optional<ParamVector> witness;
};

ShellBest best_in_shell_serial(const TrainingSet& set, const ParameterDomain& d, const Box& b, int s);
ShellBest best_in_shell_parallel(const TrainingSet& set, const ParameterDomain& d, const Box& b, int s);

// Mixed-radix decode of a linear box offset; the last parameter varies fastest.
ParamVector box_vector(const Box& b, std::uint64_t offset);

// Flip counts keyed on the full parameter vector. Sharded and mutex-guarded;
// concurrent inserts of the same key are idempotent.
class EffectivenessCache {
public:
  std::optional<std::uint32_t> find(const ParamVector& v) const;
  void insert(const ParamVector& v, std::uint32_t flips);
  std::size_t size() const;

private:
  static constexpr std::size_t kShards = 16;
  struct Shard {
    mutable std::mutex mu;
    std::unordered_map<ParamVector, std::uint32_t, ParamVectorHash> map;
  };
  Shard& shard(const ParamVector& v) const { return shards_[ParamVectorHash{}(v) % kShards]; }
  mutable std::array<Shard, kShards> shards_;
};

}  // namespace icd
