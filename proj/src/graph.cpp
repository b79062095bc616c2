#include "softout/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "json.hpp"

namespace softout {

namespace {
constexpr double kTol = 1e-9;

struct UnionFind {
  std::vector<int> parent, rnk;
  explicit UnionFind(int n) : parent(n), rnk(n, 0) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rnk[a] < rnk[b]) std::swap(a, b);
    parent[b] = a;
    if (rnk[a] == rnk[b]) ++rnk[a];
  }
};
}  // namespace

DecodingGraph::DecodingGraph(int num_vertices, std::vector<int> boundary,
                             std::vector<Edge> edges, LogicalKind kind)
    : num_vertices_(num_vertices), boundary_(std::move(boundary)),
      edges_(std::move(edges)), kind_(kind) {
  is_boundary_.assign(num_vertices_, false);
  for (int b : boundary_) {
    if (b < 0 || b >= num_vertices_) throw std::invalid_argument("boundary vertex out of range");
    is_boundary_[b] = true;
  }
  adj_.assign(num_vertices_, {});
  min_weight_ = std::numeric_limits<double>::infinity();
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const Edge& ed = edges_[e];
    if (ed.u < 0 || ed.u >= num_vertices_ || ed.v < 0 || ed.v >= num_vertices_)
      throw std::invalid_argument("edge endpoint out of range");
    if (!(ed.weight > 0)) throw std::invalid_argument("edge weight must be positive");
    adj_[ed.u].emplace_back(e, ed.v);
    adj_[ed.v].emplace_back(e, ed.u);
    total_weight_ += ed.weight;
    min_weight_ = std::min(min_weight_, ed.weight);
  }
  syndrome_index_.assign(num_vertices_, kNoVertex);
  for (int v = 0; v < num_vertices_; ++v) {
    if (!is_boundary_[v]) {
      syndrome_index_[v] = static_cast<int>(syndrome_vertices_.size());
      syndrome_vertices_.push_back(v);
    }
  }
  // Connectivity check.
  if (num_vertices_ > 0) {
    std::vector<bool> seen(num_vertices_, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (auto [e, w] : adj_[v])
        if (!seen[w]) {
          seen[w] = true;
          ++count;
          stack.push_back(w);
        }
    }
    if (count != num_vertices_) throw std::invalid_argument("decoding graph must be connected");
  }
}

std::vector<double> DecodingGraph::dijkstra(int source) const {
  return dijkstra(std::vector<std::pair<int, double>>{{source, 0.0}});
}

std::vector<double> DecodingGraph::dijkstra(
    const std::vector<std::pair<int, double>>& sources) const {
  std::vector<double> dist(num_vertices_, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  for (auto [s, d0] : sources) {
    if (d0 < dist[s]) {
      dist[s] = d0;
      pq.emplace(d0, s);
    }
  }
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    for (auto [e, w] : adj_[v]) {
      double nd = d + edges_[e].weight;
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  return dist;
}

std::string DecodingGraph::to_json() const {
  nlohmann::json j;
  j["num_vertices"] = num_vertices_;
  j["boundary"] = boundary_;
  j["logical_kind"] = kind_ == LogicalKind::Cycle ? "cycle" : "boundary_pair";
  auto& je = j["edges"] = nlohmann::json::array();
  for (const Edge& e : edges_)
    je.push_back({{"u", e.u}, {"v", e.v}, {"w", e.weight}, {"fault_id", e.fault_id}});
  return j.dump();
}

DecodingGraph DecodingGraph::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<Edge> edges;
  for (const auto& je : j.at("edges"))
    edges.push_back({je.at("u").get<int>(), je.at("v").get<int>(),
                     je.at("w").get<double>(), je.at("fault_id").get<int>()});
  LogicalKind kind = LogicalKind::BoundaryPair;
  if (j.contains("logical_kind") && j["logical_kind"] == "cycle") kind = LogicalKind::Cycle;
  return DecodingGraph(j.at("num_vertices").get<int>(),
                       j.at("boundary").get<std::vector<int>>(), std::move(edges), kind);
}

void RadiiAssignment::set(int v, double r) {
  if (r < 0) throw std::invalid_argument("radius must be non-negative");
  if (v >= static_cast<int>(radii_.size())) radii_.resize(v + 1, 0.0);
  radii_[v] = r;
}

namespace {

/// reach[v] = max over positive-radius balls of (r_x - d(x, v)); -inf if no
/// ball gets near v. A ball covers the first max(0, min(reach, w)) of an
/// incident edge.
std::vector<double> ball_reach(const DecodingGraph& graph, const RadiiAssignment& radii) {
  std::vector<std::pair<int, double>> sources;
  for (int v = 0; v < graph.num_vertices(); ++v)
    if (radii.radius(v) > 0) sources.emplace_back(v, -radii.radius(v));
  std::vector<double> reach(graph.num_vertices(), -std::numeric_limits<double>::infinity());
  if (sources.empty()) return reach;
  std::vector<double> dist = graph.dijkstra(sources);
  for (int v = 0; v < graph.num_vertices(); ++v) reach[v] = -dist[v];
  return reach;
}

double edge_covered(const Edge& e, const std::vector<double>& reach) {
  double a = std::clamp(reach[e.u], 0.0, e.weight);
  double b = std::clamp(reach[e.v], 0.0, e.weight);
  if (reach[e.u] < 0) a = 0;
  if (reach[e.v] < 0) b = 0;
  return std::min(e.weight, a + b);
}

}  // namespace

double covered_measure(const DecodingGraph& graph, const RadiiAssignment& radii,
                       int edge_id) {
  if (edge_id < 0 || edge_id >= graph.num_edges())
    throw std::invalid_argument("unknown edge id");
  std::vector<double> reach = ball_reach(graph, radii);
  return edge_covered(graph.edge(edge_id), reach);
}

ClusterSet clusters(const DecodingGraph& graph, const RadiiAssignment& radii,
                    const std::vector<bool>& syndrome) {
  if (static_cast<int>(syndrome.size()) != graph.num_syndrome_vertices())
    throw std::invalid_argument("syndrome length mismatch");
  std::vector<double> reach = ball_reach(graph, radii);

  ClusterSet cs;
  cs.covered.resize(graph.num_edges());
  const int n = graph.num_vertices();
  UnionFind uf(n);
  std::vector<bool> in_region(n, false);
  for (int v = 0; v < n; ++v)
    if (reach[v] >= -kTol) in_region[v] = true;
  // Zero-radius vertices carrying nontrivial syndrome are degenerate point
  // components; other uncovered vertices generate nothing.
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i)
    if (syndrome[i]) in_region[graph.syndrome_vertices()[i]] = true;

  for (int e = 0; e < graph.num_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    cs.covered[e] = edge_covered(ed, reach);
    cs.total_measure += cs.covered[e];
    if (cs.covered[e] >= ed.weight - kTol) uf.unite(ed.u, ed.v);
  }

  cs.component.assign(n, kNoVertex);
  for (int v = 0; v < n; ++v) {
    if (!in_region[v]) continue;
    int root = uf.find(v);
    if (cs.component[root] == kNoVertex) {
      cs.component[root] = static_cast<int>(cs.parity.size());
      cs.parity.push_back(0);
      cs.touches_boundary.push_back(false);
    }
    cs.component[v] = cs.component[root];
  }
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i) {
    int v = graph.syndrome_vertices()[i];
    if (syndrome[i] && cs.component[v] != kNoVertex) cs.parity[cs.component[v]] ^= 1;
  }
  for (int b : graph.boundary())
    if (cs.component[b] != kNoVertex) cs.touches_boundary[cs.component[b]] = true;
  return cs;
}

double quotient_shortest_path(const DecodingGraph& graph, const ClusterSet& cs,
                              int b1, int b2) {
  if (graph.logical_kind() == LogicalKind::Cycle) {
    double residual = 0;
    for (int e = 0; e < graph.num_edges(); ++e)
      residual += std::max(0.0, graph.edge(e).weight - cs.covered[e]);
    return residual;
  }
  if (b1 == b2 || !graph.is_boundary(b1) || !graph.is_boundary(b2))
    throw std::invalid_argument("quotient path needs two inequivalent boundaries");

  // Contract each cluster component to a supernode; edges keep their
  // uncovered residual weight.
  const int n = graph.num_vertices();
  std::vector<int> node(n);
  int next = 0;
  std::vector<int> comp_node(cs.num_components(), kNoVertex);
  for (int v = 0; v < n; ++v) {
    int c = cs.component[v];
    if (c == kNoVertex) {
      node[v] = next++;
    } else {
      if (comp_node[c] == kNoVertex) comp_node[c] = next++;
      node[v] = comp_node[c];
    }
  }
  std::vector<std::vector<std::pair<int, double>>> adj(next);
  for (int e = 0; e < graph.num_edges(); ++e) {
    const Edge& ed = graph.edge(e);
    double residual = std::max(0.0, ed.weight - cs.covered[e]);
    int a = node[ed.u], b = node[ed.v];
    if (a == b) continue;
    adj[a].emplace_back(b, residual);
    adj[b].emplace_back(a, residual);
  }
  std::vector<double> dist(next, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  dist[node[b1]] = 0;
  pq.emplace(0.0, node[b1]);
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v == node[b2]) break;
    for (auto [w, res] : adj[v]) {
      double nd = d + res;
      if (nd < dist[w]) {
        dist[w] = nd;
        pq.emplace(nd, w);
      }
    }
  }
  double phi = dist[node[b2]];
  if (!std::isfinite(phi)) throw std::runtime_error("boundaries disconnected in quotient graph");
  return std::max(0.0, phi);
}

}  // namespace softout
