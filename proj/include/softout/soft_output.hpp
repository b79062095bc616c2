#pragma once

#include <vector>

#include "softout/graph.hpp"

namespace softout {

enum class DecoderKind { Ufd, Mwpm };

/// phi = length of the shortest b1-b2 path after contracting the clusters
/// grown by the decoder; edges inside a cluster cost nothing.
double soft_output(const DecodingGraph& graph, const RadiiAssignment& radii,
                   int b1, int b2);

/// Repetition-code closed form phi = (n - 2|F|) w. Requires |F| <= n/2.
double rep_phi_closed_form(int n, int correction_weight, double w);

/// Exact conditional log-likelihood ratio
/// ln(Pr(E = F | sigma) / Pr(E != F | sigma)) by enumerating every error
/// pattern on the graph's fault locations (at most 24).
double exhaustive_llr(const DecodingGraph& graph, const std::vector<bool>& syndrome,
                      const std::vector<int>& correction, double p);

struct CombinedSoftOutput {
  double value;
  bool saturated;  ///< union-bound failure estimate reached 1
};

/// Union-bound combiner over windows: q = sum 1/(1+e^phi), result
/// ln((1-q)/q), or 0 with the saturation flag when q >= 1.
CombinedSoftOutput combine_windows(const std::vector<double>& phis);

}  // namespace softout
