#pragma once

#include <random>
#include <vector>

#include "softout/codes.hpp"
#include "softout/gf2.hpp"
#include "softout/soft_output.hpp"

namespace softout {

/// i.i.d. Bernoulli(p) bits over n fault locations.
std::vector<bool> sample_error(int n, double p, std::mt19937_64& rng);

/// sigma = H e over GF(2).
std::vector<bool> syndrome(const BitMatrix& h, const std::vector<bool>& e);

struct MemoryResult {
  bool failure;
  double phi;
};

/// Phenomenological memory experiment on the spacetime graph: per-round
/// data flips at rate spec.p, measurement flips at rate spec.q except in
/// the final (perfect) round, difference syndromes, decode, and compare the
/// residual data error against the code's Z logicals.
MemoryResult memory_experiment(const SurfaceCode& code, const SpacetimeGraph& st,
                               DecoderKind decoder, double p, double q,
                               std::mt19937_64& rng);

}  // namespace softout
