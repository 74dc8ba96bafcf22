#pragma once

#include <cstdint>

namespace aircomp {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stateless per-trial seed derivation. Trials can run in any order on any
// number of workers and still see the same streams.
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint32_t scheme_id,
                                std::uint32_t snr_index, std::uint64_t trial_index) {
  std::uint64_t h = mix64(base_seed ^ 0x6D756C7469616363ULL);
  h = mix64(h ^ (static_cast<std::uint64_t>(scheme_id) + 1));
  h = mix64(h ^ ((static_cast<std::uint64_t>(snr_index) + 1) << 20));
  return mix64(h ^ trial_index);
}

}  // namespace aircomp
