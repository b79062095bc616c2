#pragma once

#include <cstdint>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "softout/rng.hpp"

namespace softout {

/// Serial reference trial loop: fn(trial, rng) with a counter-based per-trial
/// generator, so results are a pure function of (seed, trial index).
template <typename Fn>
auto run_trials_serial(std::uint64_t seed, long n_trials, Fn&& fn)
    -> std::vector<decltype(fn(0L, std::declval<std::mt19937_64&>()))> {
  using R = decltype(fn(0L, std::declval<std::mt19937_64&>()));
  std::vector<R> out(n_trials);
  for (long t = 0; t < n_trials; ++t) {
    std::mt19937_64 rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    out[t] = fn(t, rng);
  }
  return out;
}

/// OpenMP trial loop; bit-identical to the serial loop for any thread count
/// because every trial derives its generator from (seed, trial) alone.
template <typename Fn>
auto run_trials(std::uint64_t seed, long n_trials, Fn&& fn, int threads = 0)
    -> std::vector<decltype(fn(0L, std::declval<std::mt19937_64&>()))> {
  using R = decltype(fn(0L, std::declval<std::mt19937_64&>()));
  static_assert(!std::is_same_v<R, bool>, "vector<bool> writes race; return int");
  std::vector<R> out(n_trials);
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic, 16)
  for (long t = 0; t < n_trials; ++t) {
    std::mt19937_64 rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    out[t] = fn(t, rng);
  }
#else
  (void)threads;
  for (long t = 0; t < n_trials; ++t) {
    std::mt19937_64 rng = trial_rng(seed, static_cast<std::uint64_t>(t));
    out[t] = fn(t, rng);
  }
#endif
  return out;
}

}  // namespace softout
