#pragma once

#include <vector>

#include "softout/graph.hpp"

namespace softout {

struct UfdResult {
  std::vector<int> correction;  ///< edge ids, F
  RadiiAssignment radii;        ///< final growth radii per vertex
};

/// Union-Find decoder: grow balls around nontrivial syndrome vertices until
/// every cluster has even parity or touches the boundary, then peel a
/// correction out of the fully covered edges. On uniform-weight graphs the
/// growth increment is exactly w/2 per visited odd cluster; in general the
/// increment is capped so no covering event is stepped over.
UfdResult ufd_decode(const DecodingGraph& graph, const std::vector<bool>& syndrome);

/// Erasure (peeling) decoder: returns a correction within the erased edges
/// whose syndrome is exactly `syndrome`. Throws if the erasure cannot
/// support the syndrome.
std::vector<int> peel(const DecodingGraph& graph, const std::vector<int>& erasure,
                      const std::vector<bool>& syndrome);

}  // namespace softout
