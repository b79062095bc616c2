// Compares the serial reference trial loop against the OpenMP loop on the
// d=5 phenomenological memory workload and checks they agree bit for bit.
#include <chrono>
#include <cmath>
#include <cstdio>

#include "softout/codes.hpp"
#include "softout/noise.hpp"
#include "softout/parallel.hpp"

using namespace softout;

int main(int argc, char** argv) {
  long trials = argc > 1 ? std::atol(argv[1]) : 2000;
  const double p = 0.03;
  SurfaceCode sc = surface_code(5, SurfaceVariant::Rotated);
  SpacetimeGraph st = spacetime_graph(sc.z_graph, {5, p, p});
  auto trial = [&](long, std::mt19937_64& rng) {
    return memory_experiment(sc, st, DecoderKind::Ufd, p, p, rng);
  };

  auto t0 = std::chrono::steady_clock::now();
  auto serial = run_trials_serial(42, trials, trial);
  auto t1 = std::chrono::steady_clock::now();
  auto parallel = run_trials(42, trials, trial);
  auto t2 = std::chrono::steady_clock::now();

  double serial_s = std::chrono::duration<double>(t1 - t0).count();
  double parallel_s = std::chrono::duration<double>(t2 - t1).count();
  long mismatches = 0;
  for (long t = 0; t < trials; ++t)
    if (serial[t].failure != parallel[t].failure || serial[t].phi != parallel[t].phi)
      ++mismatches;

  std::printf("trials:        %ld\n", trials);
  std::printf("serial:        %.3f s (%.1f us/trial)\n", serial_s, 1e6 * serial_s / trials);
  std::printf("openmp:        %.3f s (%.1f us/trial)\n", parallel_s,
              1e6 * parallel_s / trials);
  std::printf("speedup:       %.2fx\n", serial_s / parallel_s);
  std::printf("mismatches:    %ld\n", mismatches);
  return mismatches == 0 ? 0 : 1;
}
