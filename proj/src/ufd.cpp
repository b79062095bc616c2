#include "softout/ufd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace softout {

namespace {
constexpr double kTol = 1e-9;

struct OddCluster {
  double measure;
  int rep;  ///< smallest nontrivial syndrome vertex in the cluster
};

/// Odd, non-boundary clusters sorted smallest first (measure, then rep id).
std::vector<OddCluster> odd_clusters(const DecodingGraph& graph, const ClusterSet& cs,
                                     const std::vector<bool>& syndrome) {
  int nc = cs.num_components();
  std::vector<double> measure(nc, 0.0);
  std::vector<int> rep(nc, -1);
  for (int e = 0; e < graph.num_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    int c = cs.component[ed.u];
    if (c != kNoVertex && c == cs.component[ed.v] && cs.covered[e] >= ed.weight - kTol)
      measure[c] += cs.covered[e];
    else {
      // Partially covered edge: attribute the covered fragments to the
      // endpoint components.
      if (cs.component[ed.u] != kNoVertex) measure[cs.component[ed.u]] += cs.covered[e] / 2;
      if (cs.component[ed.v] != kNoVertex) measure[cs.component[ed.v]] += cs.covered[e] / 2;
    }
  }
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i) {
    int v = graph.syndrome_vertices()[i];
    int c = cs.component[v];
    if (syndrome[i] && c != kNoVertex && rep[c] == -1) rep[c] = v;
  }
  std::vector<OddCluster> out;
  for (int c = 0; c < nc; ++c)
    if (cs.parity[c] == 1 && !cs.touches_boundary[c]) out.push_back({measure[c], rep[c]});
  std::sort(out.begin(), out.end(), [](const OddCluster& a, const OddCluster& b) {
    if (a.measure != b.measure) return a.measure < b.measure;
    return a.rep < b.rep;
  });
  return out;
}

/// Growth increment for cluster `comp`: half the weight of any untouched
/// frontier edge, capped by the amount that completes a partially covered
/// one. Edges interior to the cluster close at twice the rate since both
/// ends grow.
double growth_increment(const DecodingGraph& graph, const ClusterSet& cs, int comp) {
  double delta = std::numeric_limits<double>::infinity();
  for (int e = 0; e < graph.num_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    bool u_in = cs.component[ed.u] == comp;
    bool v_in = cs.component[ed.v] == comp;
    if (!u_in && !v_in) continue;
    double residual = ed.weight - cs.covered[e];
    if (residual <= kTol) continue;
    double cand;
    if (u_in && v_in)
      cand = cs.covered[e] > kTol ? residual / 2 : ed.weight / 2;
    else
      cand = cs.covered[e] > kTol ? residual : ed.weight / 2;
    delta = std::min(delta, cand);
  }
  if (!std::isfinite(delta)) throw std::logic_error("ufd: odd cluster with no frontier");
  return delta;
}

}  // namespace

std::vector<int> peel(const DecodingGraph& graph, const std::vector<int>& erasure,
                      const std::vector<bool>& syndrome) {
  if (static_cast<int>(syndrome.size()) != graph.num_syndrome_vertices())
    throw std::invalid_argument("peel: syndrome length mismatch");
  const int n = graph.num_vertices();
  std::vector<std::vector<std::pair<int, int>>> adj(n);  // (edge, neighbor)
  for (int e : erasure) {
    const Edge& ed = graph.edge(e);
    adj[ed.u].emplace_back(e, ed.v);
    adj[ed.v].emplace_back(e, ed.u);
  }
  for (auto& a : adj)
    std::sort(a.begin(), a.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });

  std::vector<int> bit(n, 0);
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i)
    if (syndrome[i]) bit[graph.syndrome_vertices()[i]] = 1;

  std::vector<bool> visited(n, false);
  std::vector<int> correction;

  // One spanning tree per erased component, rooted at a boundary vertex when
  // available so leftover parity drains into the boundary.
  for (int pass = 0; pass < 2; ++pass) {
    for (int s = 0; s < n; ++s) {
      if (visited[s] || adj[s].empty()) continue;
      if (pass == 0 && !graph.is_boundary(s)) continue;
      // Iterative DFS recording the tree edge into each vertex.
      std::vector<int> order;
      std::vector<int> parent(n, kNoVertex), parent_edge(n, kNoVertex);
      std::vector<int> stack = {s};
      visited[s] = true;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (auto [e, w] : adj[v]) {
          if (visited[w]) continue;
          visited[w] = true;
          parent[w] = v;
          parent_edge[w] = e;
          stack.push_back(w);
        }
      }
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (v == s) continue;
        if (bit[v]) {
          correction.push_back(parent_edge[v]);
          bit[v] = 0;
          bit[parent[v]] ^= 1;
        }
      }
      if (bit[s] && !graph.is_boundary(s))
        throw std::invalid_argument("peel: erasure does not support the syndrome");
      bit[s] = 0;
    }
  }
  for (int v = 0; v < n; ++v)
    if (bit[v] && !graph.is_boundary(v))
      throw std::invalid_argument("peel: syndrome outside the erasure");
  std::sort(correction.begin(), correction.end());
  return correction;
}

UfdResult ufd_decode(const DecodingGraph& graph, const std::vector<bool>& syndrome) {
  if (static_cast<int>(syndrome.size()) != graph.num_syndrome_vertices())
    throw std::invalid_argument("ufd: syndrome length mismatch");
  RadiiAssignment radii(graph.num_vertices());

  const int step_cap = 12 * (graph.num_edges() + graph.num_vertices()) + 64;
  int steps = 0;
  while (true) {
    ClusterSet cs = clusters(graph, radii, syndrome);
    std::vector<OddCluster> odd = odd_clusters(graph, cs, syndrome);
    if (odd.empty()) break;
    // Visit every currently odd cluster once per round, smallest first.
    std::vector<bool> grown_vertex(graph.num_vertices(), false);
    for (const OddCluster& oc : odd) {
      ClusterSet cur = clusters(graph, radii, syndrome);
      int comp = cur.component[oc.rep];
      if (comp == kNoVertex || cur.parity[comp] != 1 || cur.touches_boundary[comp]) continue;
      bool already = false;
      for (int v = 0; v < graph.num_vertices() && !already; ++v)
        if (cur.component[v] == comp && grown_vertex[v]) already = true;
      if (already) continue;

      double delta = growth_increment(graph, cur, comp);
      for (int i = 0; i < graph.num_syndrome_vertices(); ++i) {
        int v = graph.syndrome_vertices()[i];
        if (syndrome[i] && cur.component[v] == comp) {
          radii.add(v, delta);
          grown_vertex[v] = true;
        }
      }
      if (++steps > step_cap) throw std::logic_error("ufd: growth failed to terminate");
    }
  }

  ClusterSet cs = clusters(graph, radii, syndrome);
  std::vector<int> erasure;
  for (int e = 0; e < graph.num_edges(); ++e)
    if (cs.covered[e] >= graph.edge(e).weight - kTol) erasure.push_back(e);
  return {peel(graph, erasure, syndrome), std::move(radii)};
}

}  // namespace softout
