#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icd/synthesis.hpp"

namespace icd {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitSolver = 3 };

// Experiment description. Relative paths resolve against the manifest's
// directory. Command-line flags override individual fields.
struct ExperimentManifest {
  std::filesystem::path train;
  std::optional<std::filesystem::path> test;
  std::optional<std::filesystem::path> domains;
  std::filesystem::path out = ".";
  std::uint64_t seed = 0;
  SynthesisConfig config;
};

ExperimentManifest manifest_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
ExperimentManifest load_manifest(const std::filesystem::path& path);

// Deterministic synthesis report: front statistics, per-layer stats and
// witnesses. Wall time is kept out so reruns produce identical bytes.
nlohmann::json synthesis_report(const SynthesisResult& result, const ParameterDomain& d,
                                const SynthesisConfig& cfg, std::size_t train_size,
                                const std::optional<Rational>& validation);

// argv-style entry point; returns one of the exit codes above.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace icd
