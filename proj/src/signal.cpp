#include "icd/signal.hpp"

#include <cmath>
#include <stdexcept>

#include "icd/error.hpp"

namespace icd {

std::string_view label_name(Label label) {
  return label == Label::RequiresTherapy ? "VT" : "SVT";
}

Label label_from_name(std::string_view name) {
  if (name == "VT") return Label::RequiresTherapy;
  if (name == "SVT") return Label::NoTherapy;
  throw ParseError("unknown label '" + std::string(name) + "' (expected VT or SVT)");
}

void validate(const FeatureSignal& s) {
  const std::size_t n = s.vints.size();
  if (n == 0) throw ParseError("signal has no cycles", s.id, "vints");
  if (s.fcc.size() != n)
    throw ParseError("length " + std::to_string(s.fcc.size()) + " differs from vints length " +
                         std::to_string(n),
                     s.id, "fcc");
  if (s.atrial_count.size() != n)
    throw ParseError("length " + std::to_string(s.atrial_count.size()) +
                         " differs from vints length " + std::to_string(n),
                     s.id, "atrial_count");
  for (std::size_t k = 0; k < n; ++k)
    if (s.vints[k] <= 0) throw ParseError("interval must be positive", s.id, "vints", k);
  for (std::size_t i = 0; i < s.aints.size(); ++i)
    if (s.aints[i] <= 0) throw ParseError("interval must be positive", s.id, "aints", i);
  int prev = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const int c = s.atrial_count[k];
    if (c < prev) throw ParseError("count decreases", s.id, "atrial_count", k);
    if (c < 0 || static_cast<std::size_t>(c) > s.aints.size())
      throw ParseError("count exceeds number of atrial intervals", s.id, "atrial_count", k);
    prev = c;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double f = s.fcc[k];
    if (!std::isfinite(f) || f < -1.0 || f > 1.0)
      throw ParseError("score must be a finite value in [-1, 1]", s.id, "fcc", k);
  }
}

VarianceFraction variance_fraction(std::span<const int> vints, std::size_t k) {
  if (k >= vints.size()) throw std::out_of_range("cycle index out of range");
  const std::size_t first = k + 1 >= kWindow ? k + 1 - kWindow : 0;
  const auto n = static_cast<std::int64_t>(k + 1 - first);
  std::int64_t sum = 0;
  std::int64_t sum_sq = 0;
  for (std::size_t i = first; i <= k; ++i) {
    sum += vints[i];
    sum_sq += static_cast<std::int64_t>(vints[i]) * vints[i];
  }
  return {n * sum_sq - sum * sum, n * n};
}

double compute_vvar(std::span<const int> vints, std::size_t k) {
  const auto f = variance_fraction(vints, k);
  return static_cast<double>(f.num) / static_cast<double>(f.den);
}

bool compute_d5(std::span<const int> vints, std::span<const int> aints,
                std::span<const int> atrial_count, std::size_t k) {
  if (k >= vints.size() || k >= atrial_count.size())
    throw std::out_of_range("cycle index out of range");
  const auto a_end = static_cast<std::size_t>(atrial_count[k]);
  if (a_end == 0) return false;

  const std::size_t v_first = k + 1 >= kWindow ? k + 1 - kWindow : 0;
  const std::size_t a_first = a_end >= kWindow ? a_end - kWindow : 0;
  std::int64_t v_sum = 0;
  for (std::size_t i = v_first; i <= k; ++i) v_sum += vints[i];
  std::int64_t a_sum = 0;
  for (std::size_t i = a_first; i < a_end; ++i) a_sum += aints[i];
  const auto v_n = static_cast<std::int64_t>(k + 1 - v_first);
  const auto a_n = static_cast<std::int64_t>(a_end - a_first);

  // 60000 / (v_sum / v_n) >= 60000 / (a_sum / a_n) + 10, scaled by v_sum * a_sum.
  return 60000 * v_n * a_sum >= 60000 * a_n * v_sum + 10 * v_sum * a_sum;
}

DerivedFeatures precompute(const FeatureSignal& signal) {
  const std::size_t n = signal.cycles();
  DerivedFeatures out;
  out.vvar.resize(n);
  out.d5.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.vvar[k] = compute_vvar(signal.vints, k);
    out.d5[k] = compute_d5(signal.vints, signal.aints, signal.atrial_count, k) ? 1 : 0;
  }
  return out;
}

PreparedSignal::PreparedSignal(FeatureSignal s) : signal(std::move(s)), derived(precompute(signal)) {}

std::vector<PreparedSignal> prepare_all(const std::vector<FeatureSignal>& signals) {
  std::vector<PreparedSignal> out;
  out.reserve(signals.size());
  for (const auto& s : signals) out.emplace_back(s);
  return out;
}

}  // namespace icd
