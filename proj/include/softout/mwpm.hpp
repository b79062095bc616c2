#pragma once

#include <utility>
#include <vector>

#include "softout/graph.hpp"

namespace softout {

/// Metric closure of the nontrivial syndrome vertices: pairwise shortest
/// path weights plus the distance from each node to the nearest boundary
/// vertex, with witness paths (edge id lists) kept for lifting matchings
/// back to the decoding graph.
struct SyndromeGraph {
  std::vector<int> nodes;  ///< decoding-graph vertex ids of V_sigma
  std::vector<std::vector<double>> dist;
  std::vector<std::vector<std::vector<int>>> witness;
  std::vector<double> boundary_dist;
  std::vector<std::vector<int>> boundary_witness;

  int size() const { return static_cast<int>(nodes.size()); }
};

SyndromeGraph build_syndrome_graph(const DecodingGraph& graph,
                                   const std::vector<bool>& syndrome);

/// One nonzero dual variable y_S of the matching LP; S is a set of
/// decoding-graph vertex ids (a singleton or a blossom).
struct DualSet {
  std::vector<int> vertices;
  double y;
};

struct MatchingResult {
  /// Vertex-id pairs; second = kNoVertex for a boundary match.
  std::vector<std::pair<int, int>> matches;
  std::vector<int> correction;  ///< F as decoding-graph edge ids
  double objective = 0;         ///< |F|_w = matching weight
  std::vector<DualSet> duals;   ///< all y_S > 0, plus zero singletons
  RadiiAssignment radii;        ///< r_v = sum of y_S over S containing v
};

/// Minimum weight perfect matching via a primal-dual blossom algorithm on
/// the metric closure, with the boundary acting as an always-free partner.
/// All duals are kept non-negative (possible because closure weights obey
/// the triangle inequality), matching the sign constraints of the LP.
MatchingResult mwpm_decode(const DecodingGraph& graph, const std::vector<bool>& syndrome);

/// w_e - sum of y_S over S containing exactly one of nodes i, j (indices
/// into sg.nodes). Non-negative for a feasible dual.
double pair_slack(const SyndromeGraph& sg, const MatchingResult& res, int i, int j);
/// Boundary slack of node i: d(node, boundary) - sum of y_S over S containing it.
double boundary_slack(const SyndromeGraph& sg, const MatchingResult& res, int i);

struct OppositeClassResult {
  std::vector<int> edges;
  double weight;
};

/// Exact minimum-weight valid edge set in the logical class opposite to F.
/// The class of an edge set is the parity of its incidence on b1; the
/// optimum is found by pairing V_sigma with parity-labeled shortest paths
/// and a subset DP (|V_sigma| <= 20). Cycle graphs have exactly two valid
/// sets per syndrome, so M is the complement of F.
OppositeClassResult min_weight_opposite_class(const DecodingGraph& graph,
                                              const std::vector<bool>& syndrome,
                                              const std::vector<int>& correction);

}  // namespace softout
