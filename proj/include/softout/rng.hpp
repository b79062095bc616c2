#pragma once

#include <cstdint>
#include <random>

namespace softout {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Per-trial RNG stream. Seeding depends only on (seed, trial), so results
/// are identical no matter how trials are distributed over threads.
inline std::mt19937_64 trial_rng(uint64_t seed, uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x51ed270b7a61ca8dULL)));
}

}  // namespace softout
