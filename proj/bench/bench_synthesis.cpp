// Serial reference path vs the OpenMP sliding-window kernels. The serial
// side also runs the full simulator, so the ratio mixes both speedups;
// CountFlipsReference vs CountFlipsFast isolates the kernel alone.

#include <benchmark/benchmark.h>

#include "icd/generator.hpp"
#include "icd/kernels.hpp"
#include "icd/rng.hpp"
#include "icd/synthesis.hpp"

using namespace icd;

namespace {

const ParameterDomain& domain() {
  static const ParameterDomain d = expand_domains();
  return d;
}

const TrainingSet& training_set() {
  static const TrainingSet set = [] {
    std::vector<FeatureSignal> all;
    std::uint64_t seed = 1;
    for (const auto& c : builtin_conditions()) {
      auto g = generate(c, 10, seed++);
      all.insert(all.end(), g.begin(), g.end());
    }
    return TrainingSet(prepare_all(all), domain());
  }();
  return set;
}

std::vector<ParamVector> candidates(std::size_t n) {
  const auto& d = domain();
  SplitMix64 rng(17);
  std::vector<ParamVector> out(n);
  for (auto& v : out)
    for (ParamId id : kAllParams) v[id] = static_cast<int>(rng.uniform_int(1, d[id].size()));
  return out;
}

void BM_EvaluateSerial(benchmark::State& state) {
  const auto cands = candidates(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_serial(training_set(), domain(), cands));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(training_set().size()));
}

void BM_EvaluateParallel(benchmark::State& state) {
  const auto cands = candidates(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_parallel(training_set(), domain(), cands));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<std::int64_t>(training_set().size()));
}

void BM_CountFlipsReference(benchmark::State& state) {
  const auto cands = candidates(64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(count_flips_reference(training_set(), to_params(cands[i++ % 64], domain())));
}

void BM_CountFlipsFast(benchmark::State& state) {
  const auto cands = candidates(64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(count_flips(training_set(), to_params(cands[i++ % 64], domain())));
}

void synth(benchmark::State& state, Execution exec) {
  SynthesisConfig cfg;
  cfg.free_params = parse_free_params("VF_th,VT_th,VTdur");
  cfg.max_distance = static_cast<int>(state.range(0));
  cfg.execution = exec;
  for (auto _ : state) benchmark::DoNotOptimize(synthesize_exact(training_set(), domain(), cfg));
}

void BM_SynthesizeExactSerial(benchmark::State& state) { synth(state, Execution::Serial); }
void BM_SynthesizeExactParallel(benchmark::State& state) { synth(state, Execution::Parallel); }

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CountFlipsReference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_CountFlipsFast)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SynthesizeExactSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SynthesizeExactParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
