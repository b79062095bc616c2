#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace softout {

constexpr int kNoVertex = -1;

/// Which kind of logical operator the graph's soft output refers to.
///  - BoundaryPair: logicals are paths between the two inequivalent
///    boundary vertices b1, b2 (surface codes).
///  - Cycle: the single logical covers every edge once (repetition code on
///    a cycle, boundary made real by the redundant check).
enum class LogicalKind { BoundaryPair, Cycle };

struct Edge {
  int u;
  int v;
  double weight;
  int fault_id;  ///< error coordinate this edge detects
};

/// Weighted decoding graph: one vertex per check, one edge per fault
/// mechanism. Boundary vertices carry no syndrome. Immutable after
/// construction; shared read-only across trial workers.
class DecodingGraph {
 public:
  DecodingGraph(int num_vertices, std::vector<int> boundary,
                std::vector<Edge> edges,
                LogicalKind kind = LogicalKind::BoundaryPair);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<int>& boundary() const { return boundary_; }
  bool is_boundary(int v) const { return is_boundary_[v]; }
  LogicalKind logical_kind() const { return kind_; }

  /// Syndrome vertices in a fixed order (all non-boundary vertices).
  const std::vector<int>& syndrome_vertices() const { return syndrome_vertices_; }
  int num_syndrome_vertices() const { return static_cast<int>(syndrome_vertices_.size()); }
  /// Index of vertex v within syndrome_vertices(), or kNoVertex.
  int syndrome_index(int v) const { return syndrome_index_[v]; }

  /// Incident (edge id, neighbor) pairs per vertex.
  const std::vector<std::pair<int, int>>& incident(int v) const { return adj_[v]; }

  double total_weight() const { return total_weight_; }
  double min_edge_weight() const { return min_weight_; }

  /// Single-source shortest path distances by edge weight.
  std::vector<double> dijkstra(int source) const;
  std::vector<double> dijkstra(const std::vector<std::pair<int, double>>& sources) const;

  std::string to_json() const;
  static DecodingGraph from_json(const std::string& text);

 private:
  int num_vertices_;
  std::vector<int> boundary_;
  std::vector<Edge> edges_;
  LogicalKind kind_;
  std::vector<bool> is_boundary_;
  std::vector<int> syndrome_vertices_;
  std::vector<int> syndrome_index_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  double total_weight_ = 0;
  double min_weight_ = 0;
};

/// Radius per vertex, same units as edge weights. Vertices beyond the
/// stored size have radius 0.
class RadiiAssignment {
 public:
  RadiiAssignment() = default;
  explicit RadiiAssignment(int num_vertices) : radii_(num_vertices, 0.0) {}

  double radius(int v) const {
    return v < static_cast<int>(radii_.size()) ? radii_[v] : 0.0;
  }
  void set(int v, double r);
  void add(int v, double delta) { set(v, radius(v) + delta); }
  int size() const { return static_cast<int>(radii_.size()); }

 private:
  std::vector<double> radii_;
};

/// Connected components of the covered region (union of metric balls),
/// with per-edge covered measure, per-component syndrome parity and
/// boundary contact.
struct ClusterSet {
  std::vector<double> covered;      ///< per edge, in [0, w(e)]
  std::vector<int> component;       ///< per vertex; kNoVertex if uncovered
  std::vector<int> parity;          ///< per component, syndrome parity
  std::vector<bool> touches_boundary;  ///< per component
  double total_measure = 0;

  int num_components() const { return static_cast<int>(parity.size()); }
};

/// Measure of the part of edge `edge_id` covered by the union of balls.
/// Balls reach an edge through shortest paths to its endpoints.
double covered_measure(const DecodingGraph& graph, const RadiiAssignment& radii,
                       int edge_id);

ClusterSet clusters(const DecodingGraph& graph, const RadiiAssignment& radii,
                    const std::vector<bool>& syndrome);

/// Shortest b1-b2 distance in the graph with every cluster component
/// identified to a point; each edge contributes its uncovered residual
/// weight. For Cycle graphs (repetition code) the logical covers the whole
/// cycle, so the result is the total uncovered measure and b1/b2 are
/// ignored.
double quotient_shortest_path(const DecodingGraph& graph, const ClusterSet& cs,
                              int b1, int b2);

}  // namespace softout
