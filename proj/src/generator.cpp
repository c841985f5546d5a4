#include "icd/generator.hpp"

#include <cmath>

#include "icd/error.hpp"
#include "icd/rng.hpp"
#include "icd/signal_io.hpp"

namespace icd {

std::string_view atrial_mode_name(AtrialMode m) {
  switch (m) {
    case AtrialMode::Tracking: return "TRACKING";
    case AtrialMode::Afib: return "AFIB";
    case AtrialMode::Flutter: return "FLUTTER";
    case AtrialMode::Dissociated: return "DISSOCIATED";
  }
  return "TRACKING";
}

AtrialMode atrial_mode_from_name(std::string_view name) {
  for (AtrialMode m : {AtrialMode::Tracking, AtrialMode::Afib, AtrialMode::Flutter, AtrialMode::Dissociated})
    if (atrial_mode_name(m) == name) return m;
  throw DomainError("unknown atrial mode '" + std::string(name) + "'");
}

void ConditionSpec::validate() const {
  auto fail = [&](const std::string& what) { throw DomainError("condition '" + name + "': " + what); };
  if (name.empty()) throw DomainError("condition has no name");
  if (vint_range.lo < 100 || vint_range.lo > vint_range.hi) fail("vint_range must satisfy 100 <= lo <= hi");
  if (vint_jitter < 0 || vint_jitter >= vint_range.lo) fail("vint_jitter must be in [0, vint_range.lo)");
  if ((a_to_v == AtrialMode::Afib || a_to_v == AtrialMode::Dissociated) &&
      (aint_range.lo < 100 || aint_range.lo > aint_range.hi))
    fail("aint_range must satisfy 100 <= lo <= hi");
  if (!(fcc_high_prob >= 0.0 && fcc_high_prob <= 1.0)) fail("fcc_high_prob must be in [0, 1]");
  if (!(duration_s > 0.0) || duration_s > 3600.0) fail("duration_s must be in (0, 3600]");
}

nlohmann::json spec_to_json(const ConditionSpec& s) {
  return {{"name", s.name},
          {"class", std::string(label_name(s.label))},
          {"vint_range", {s.vint_range.lo, s.vint_range.hi}},
          {"vint_jitter", s.vint_jitter},
          {"a_to_v", std::string(atrial_mode_name(s.a_to_v))},
          {"aint_range", {s.aint_range.lo, s.aint_range.hi}},
          {"fcc_high_prob", s.fcc_high_prob},
          {"duration_s", s.duration_s}};
}

namespace {

Range range_from_json(const nlohmann::json& j, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw DomainError(std::string(field) + " must be a [lo, hi] pair of integers");
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

ConditionSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("condition spec must be a JSON object");
  ConditionSpec s;
  try {
    s.name = j.at("name").get<std::string>();
    s.label = label_from_name(j.at("class").get<std::string>());
    s.vint_range = range_from_json(j.at("vint_range"), "vint_range");
    s.vint_jitter = j.value("vint_jitter", 0);
    s.a_to_v = atrial_mode_from_name(j.value("a_to_v", std::string("TRACKING")));
    if (j.contains("aint_range")) s.aint_range = range_from_json(j.at("aint_range"), "aint_range");
    s.fcc_high_prob = j.at("fcc_high_prob").get<double>();
    s.duration_s = j.value("duration_s", 30.0);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("bad condition spec: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DomainError(std::string("bad condition spec: ") + e.what());
  }
  s.validate();
  return s;
}

ConditionSpec load_spec(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
  // A bare archetype name is accepted as shorthand.
  if (j.is_string()) return builtin_condition(j.get<std::string>());
  return spec_from_json(j);
}

namespace {

double sample_fcc(SplitMix64& rng, double high_prob) {
  const double x = rng.bernoulli(high_prob) ? rng.uniform_real(0.95, 0.99) : rng.uniform_real(0.2, 0.7);
  return std::round(x * 1000.0) / 1000.0;
}

FeatureSignal generate_one(const ConditionSpec& spec, std::uint64_t seed, std::string id) {
  SplitMix64 rng(seed);
  FeatureSignal s;
  s.id = std::move(id);
  s.label = spec.label;

  const auto duration_ms = static_cast<std::int64_t>(std::llround(spec.duration_s * 1000.0));
  const int base = static_cast<int>(rng.uniform_int(spec.vint_range.lo, spec.vint_range.hi));
  std::int64_t total = 0;
  while (total < duration_ms) {
    const int v = base + static_cast<int>(rng.uniform_int(-spec.vint_jitter, spec.vint_jitter));
    s.vints.push_back(v);
    s.fcc.push_back(sample_fcc(rng, spec.fcc_high_prob));
    total += v;
  }

  switch (spec.a_to_v) {
    case AtrialMode::Tracking:
      s.aints = s.vints;
      for (std::size_t k = 0; k < s.vints.size(); ++k) s.atrial_count.push_back(static_cast<int>(k + 1));
      break;
    case AtrialMode::Flutter:
      for (std::size_t k = 0; k < s.vints.size(); ++k) {
        const int first = s.vints[k] / 2;
        s.aints.push_back(first);
        s.aints.push_back(s.vints[k] - first);
        s.atrial_count.push_back(static_cast<int>(2 * (k + 1)));
      }
      break;
    case AtrialMode::Afib:
    case AtrialMode::Dissociated: {
      // Independent atrial timeline; atrial_count[k] counts atrial events at
      // or before the k-th ventricular event.
      const int a_base = static_cast<int>(rng.uniform_int(spec.aint_range.lo, spec.aint_range.hi));
      const int a_jit = std::min(20, a_base / 10);
      std::int64_t a_time = 0;
      std::int64_t v_time = 0;
      for (int v : s.vints) {
        v_time += v;
        while (a_time < v_time) {
          const int a = spec.a_to_v == AtrialMode::Afib
                            ? static_cast<int>(rng.uniform_int(spec.aint_range.lo, spec.aint_range.hi))
                            : a_base + static_cast<int>(rng.uniform_int(-a_jit, a_jit));
          s.aints.push_back(a);
          a_time += a;
        }
      }
      std::int64_t t = 0;
      std::size_t m = 0;
      v_time = 0;
      for (int v : s.vints) {
        v_time += v;
        while (m < s.aints.size() && t + s.aints[m] <= v_time) t += s.aints[m++];
        s.atrial_count.push_back(static_cast<int>(m));
      }
      break;
    }
  }
  validate(s);
  return s;
}

}  // namespace

std::vector<FeatureSignal> generate(const ConditionSpec& spec, int n, std::uint64_t seed) {
  if (n < 1) throw DomainError("signal count must be at least 1");
  spec.validate();
  SplitMix64 master(seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(n));
  for (auto& s : seeds) s = master.next();

  std::vector<FeatureSignal> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = generate_one(spec, seeds[static_cast<std::size_t>(i)],
                                                    spec.name + "-" + std::to_string(seed) + "-" + std::to_string(i));
  return out;
}

std::vector<ConditionSpec> builtin_conditions() {
  return {
      {"fast-VF", Label::RequiresTherapy, {150, 260}, 20, AtrialMode::Dissociated, {600, 900}, 0.05, 30.0},
      {"monomorphic-VT", Label::RequiresTherapy, {240, 330}, 10, AtrialMode::Dissociated, {600, 900}, 0.02, 30.0},
      {"SVT-tracking", Label::NoTherapy, {310, 530}, 5, AtrialMode::Tracking, {}, 0.9, 30.0},
      {"AFib-conducted", Label::NoTherapy, {340, 480}, 40, AtrialMode::Afib, {150, 300}, 0.9, 30.0},
      {"atrial-flutter", Label::NoTherapy, {380, 520}, 5, AtrialMode::Flutter, {}, 0.9, 30.0},
      {"sinus-rhythm", Label::NoTherapy, {700, 1000}, 30, AtrialMode::Tracking, {}, 0.95, 30.0},
  };
}

const ConditionSpec& builtin_condition(std::string_view name) {
  static const std::vector<ConditionSpec> all = builtin_conditions();
  for (const auto& s : all)
    if (s.name == name) return s;
  throw DomainError("unknown builtin condition '" + std::string(name) + "'");
}

double misclassification_rate(const std::vector<FeatureSignal>& signals, const Params& p) {
  if (signals.empty()) return 0.0;
  int wrong = 0;
  for (const auto& s : signals) {
    const bool reach = reaches_therapy(PreparedSignal(s), p);
    if (reach != (s.label == Label::RequiresTherapy)) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(signals.size());
}

CalibratedSet generate_calibrated(const ConditionSpec& spec, int n, std::uint64_t seed, double max_rate,
                                  int max_attempts) {
  SplitMix64 fallback(seed);
  std::uint64_t current = seed;
  double worst = 0.0;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    auto signals = generate(spec, n, current);
    const double rate = misclassification_rate(signals);
    if (rate <= max_rate) return {std::move(signals), current, attempt, rate};
    worst = std::max(worst, rate);
    current = fallback.next();
  }
  throw Error("condition '" + spec.name + "' failed nominal calibration after " + std::to_string(max_attempts) +
              " seeds (misclassification up to " + std::to_string(worst) + ")");
}

}  // namespace icd
