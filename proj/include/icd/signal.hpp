#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace icd {

enum class Label { RequiresTherapy, NoTherapy };

std::string_view label_name(Label label);  // "VT" / "SVT"
Label label_from_name(std::string_view name);

// Feature-level view of one EGM recording: one entry per heart cycle, except
// aints which holds every atrial interval seen during the recording.
struct FeatureSignal {
  std::string id;
  std::vector<int> vints;          // ms, one per cycle
  std::vector<int> aints;          // ms
  std::vector<int> atrial_count;   // atrial intervals completed within cycles 0..k
  std::vector<double> fcc;         // Rhythm Match score per cycle, [-1, 1]
  Label label = Label::NoTherapy;

  std::size_t cycles() const noexcept { return vints.size(); }
  bool operator==(const FeatureSignal&) const = default;
};

// Throws ParseError naming the signal, field and offending index.
void validate(const FeatureSignal& signal);

// Parameter-independent per-cycle quantities.
struct DerivedFeatures {
  std::vector<double> vvar;        // ms^2
  std::vector<std::uint8_t> d5;

  bool operator==(const DerivedFeatures&) const = default;
};

// Population variance of a window as an exact fraction num / den, where
// den = n^2 for a window of n integer intervals.
struct VarianceFraction {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

inline constexpr std::size_t kWindow = 10;

VarianceFraction variance_fraction(std::span<const int> vints, std::size_t k);

// Variance of vints[max(0, k-9) .. k].
double compute_vvar(std::span<const int> vints, std::size_t k);

// True when the mean ventricular rate over the last ten cycles is at least
// 10 BPM above the mean rate of the last ten atrial intervals. Evaluated on
// exact integer sums, so the >= boundary is not subject to rounding.
bool compute_d5(std::span<const int> vints, std::span<const int> aints,
                std::span<const int> atrial_count, std::size_t k);

DerivedFeatures precompute(const FeatureSignal& signal);

// A signal bundled with its pre-computed features; the unit every simulator
// and synthesis routine consumes.
struct PreparedSignal {
  FeatureSignal signal;
  DerivedFeatures derived;

  explicit PreparedSignal(FeatureSignal s);
  std::size_t cycles() const noexcept { return signal.cycles(); }
};

std::vector<PreparedSignal> prepare_all(const std::vector<FeatureSignal>& signals);

}  // namespace icd
