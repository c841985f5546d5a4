#pragma once

#include <cstdint>
#include <string_view>

namespace icd {

// SplitMix64 (Steele, Lea & Flood). Bit-exact across platforms, which keeps
// generated signal sets and random-search samples reproducible everywhere.
class SplitMix64 {
public:
  static constexpr std::string_view kAlgorithm = "splitmix64";

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Independent child stream.
  constexpr SplitMix64 split() noexcept { return SplitMix64(next()); }

  // Uniform integer in [lo, hi], rejection-sampled so there is no modulo bias.
  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform double in [0, 1) from the top 53 bits.
  constexpr double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr double uniform_real(double lo, double hi) noexcept { return lo + (hi - lo) * uniform01(); }

  constexpr bool bernoulli(double p) noexcept { return uniform01() < p; }

private:
  std::uint64_t state_;
};

}  // namespace icd
