#pragma once

#include <cstdint>

namespace abrsa {

// SplitMix64 used as a counter-based generator: the i-th output of a stream is
// the SplitMix64 finalizer applied to key + (i + 1) * golden_gamma, so any
// draw can be recomputed from (key, i) without storing generator state.

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Key of the independent stream number `index` under `master_seed`.
constexpr std::uint64_t stream_key(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return splitmix64_mix(splitmix64_mix(master_seed) ^ splitmix64_mix(index + kGoldenGamma));
}

constexpr std::uint64_t counter_draw(std::uint64_t key, std::uint64_t counter) noexcept {
  return splitmix64_mix(key + (counter + 1) * kGoldenGamma);
}

/// Uniform double in [0,1) with 53 random bits.
constexpr double to_unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Sequential view of one counter stream.
class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t next_u64() noexcept { return counter_draw(key_, counter_++); }
  constexpr double next_unit() noexcept { return to_unit_double(next_u64()); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace abrsa
