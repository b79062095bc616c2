#include "softout/mwpm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace softout {

namespace {
constexpr double kTol = 1e-7;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBoundaryMatch = -2;
}  // namespace

SyndromeGraph build_syndrome_graph(const DecodingGraph& graph,
                                   const std::vector<bool>& syndrome) {
  if (static_cast<int>(syndrome.size()) != graph.num_syndrome_vertices())
    throw std::invalid_argument("mwpm: syndrome length mismatch");
  SyndromeGraph sg;
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i)
    if (syndrome[i]) sg.nodes.push_back(graph.syndrome_vertices()[i]);
  const int k = sg.size();
  const int n = graph.num_vertices();
  sg.dist.assign(k, std::vector<double>(k, 0.0));
  sg.witness.assign(k, std::vector<std::vector<int>>(k));
  sg.boundary_dist.assign(k, kInf);
  sg.boundary_witness.resize(k);

  for (int i = 0; i < k; ++i) {
    // Dijkstra with parent edges for witness extraction.
    std::vector<double> dist(n, kInf);
    std::vector<int> par_edge(n, kNoVertex), par_vertex(n, kNoVertex);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[sg.nodes[i]] = 0;
    pq.emplace(0.0, sg.nodes[i]);
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (auto [e, w] : graph.incident(v)) {
        double nd = d + graph.edge(e).weight;
        if (nd < dist[w]) {
          dist[w] = nd;
          par_edge[w] = e;
          par_vertex[w] = v;
          pq.emplace(nd, w);
        }
      }
    }
    auto path_to = [&](int v) {
      std::vector<int> path;
      while (v != sg.nodes[i]) {
        path.push_back(par_edge[v]);
        v = par_vertex[v];
      }
      return path;
    };
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      sg.dist[i][j] = dist[sg.nodes[j]];
      sg.witness[i][j] = path_to(sg.nodes[j]);
    }
    for (int b : graph.boundary()) {
      if (dist[b] < sg.boundary_dist[i]) {
        sg.boundary_dist[i] = dist[b];
        sg.boundary_witness[i] = path_to(b);
      }
    }
    if (!graph.boundary().empty() && !std::isfinite(sg.boundary_dist[i]))
      throw std::runtime_error("mwpm: boundary unreachable");
  }
  return sg;
}

namespace {

/// Primal-dual blossom solver on the metric closure, node indices are
/// positions in sg.nodes. The boundary behaves as a partner that is always
/// free, so augmenting paths may terminate there. All duals stay >= 0: when
/// a minus vertex reaches y = 0, the triangle inequality forces a tight
/// plus-plus edge through its neighbors, which triggers a contraction
/// instead of a negative dual.
class BlossomSolver {
 public:
  explicit BlossomSolver(const SyndromeGraph& sg) : sg_(sg), k_(sg.size()) {
    nodes_.resize(k_);
    for (int i = 0; i < k_; ++i) nodes_[i].alive = true;
  }

  void solve() {
    if (k_ == 0) return;
    while (true) {
      int root = -1;
      for (int b = 0; b < static_cast<int>(nodes_.size()); ++b)
        if (nodes_[b].alive && nodes_[b].parent == -1 && nodes_[b].match == -1) {
          root = b;
          break;
        }
      if (root == -1) break;
      run_phase(root);
    }
  }

  MatchingResult extract(const DecodingGraph& graph) {
    MatchingResult res;
    res.radii = RadiiAssignment(graph.num_vertices());
    // External matches, one record per partnership.
    std::vector<std::pair<int, int>> pairs;  // node-index pairs; second -1 = boundary
    std::vector<bool> done(nodes_.size(), false);
    for (int b = 0; b < static_cast<int>(nodes_.size()); ++b) {
      Bnode& nb = nodes_[b];
      if (!nb.alive || nb.parent != -1 || done[b]) continue;
      if (nb.match == kBoundaryMatch) {
        make_base(b, nb.match_edge.first);
        pairs.emplace_back(nb.match_edge.first, -1);
      } else if (nb.match >= 0) {
        make_base(b, nb.match_edge.first);
        make_base(nb.match, nb.match_edge.second);
        pairs.emplace_back(nb.match_edge.first, nb.match_edge.second);
        done[nb.match] = true;
      } else {
        throw std::logic_error("mwpm: unmatched node after solve");
      }
      done[b] = true;
    }
    // Internal blossom pairings; consistent after the make_base calls above.
    for (int b = k_; b < static_cast<int>(nodes_.size()); ++b) {
      Bnode& nb = nodes_[b];
      if (!nb.alive || nb.parent != -1) continue;
      collect_internal(b, pairs);
    }

    std::vector<int> parity(graph.num_edges(), 0);
    for (auto [i, j] : pairs) {
      res.matches.emplace_back(sg_.nodes[i], j == -1 ? kNoVertex : sg_.nodes[j]);
      const std::vector<int>& path = j == -1 ? sg_.boundary_witness[i] : sg_.witness[i][j];
      res.objective += j == -1 ? sg_.boundary_dist[i] : sg_.dist[i][j];
      for (int e : path) parity[e] ^= 1;
    }
    double fw = 0;
    for (int e = 0; e < graph.num_edges(); ++e)
      if (parity[e]) {
        res.correction.push_back(e);
        fw += graph.edge(e).weight;
      }
    if (std::abs(fw - res.objective) > 1e-6 * (1 + res.objective))
      throw std::logic_error("mwpm: witness paths overlap at optimum");

    for (int i = 0; i < k_; ++i) {
      res.duals.push_back({{sg_.nodes[i]}, nodes_[i].y});
      res.radii.set(sg_.nodes[i], yhat(i));
    }
    for (int b = k_; b < static_cast<int>(nodes_.size()); ++b) {
      if (!nodes_[b].alive || nodes_[b].y <= kTol) continue;
      std::vector<int> vs;
      collect_vertices(b, vs);
      for (int& v : vs) v = sg_.nodes[v];
      std::sort(vs.begin(), vs.end());
      res.duals.push_back({std::move(vs), nodes_[b].y});
    }
    return res;
  }

 private:
  struct Bnode {
    double y = 0;
    bool alive = false;
    int parent = -1;
    std::vector<int> children;                  // odd cycle, children[0] = base
    std::vector<std::pair<int, int>> cycle;     // cycle[i]: (in children[i], in children[i+1])
    int label = 0;
    int tree_parent = -1;
    std::pair<int, int> tree_edge{-1, -1};      // (vertex in parent, vertex in this)
    int match = -1;                             // outer id, kBoundaryMatch or -1
    std::pair<int, int> match_edge{-1, -1};     // (vertex in this, vertex in partner)
  };

  const SyndromeGraph& sg_;
  int k_;
  std::vector<Bnode> nodes_;

  int outer(int b) const {
    while (nodes_[b].parent != -1) b = nodes_[b].parent;
    return b;
  }
  double yhat(int v) const {
    double s = 0;
    for (int b = v; b != -1; b = nodes_[b].parent) s += nodes_[b].y;
    return s;
  }
  double slack(int u, int v) const { return sg_.dist[u][v] - yhat(u) - yhat(v); }
  double bslack(int u) const { return sg_.boundary_dist[u] - yhat(u); }

  void collect_vertices(int b, std::vector<int>& out) const {
    if (b < k_) {
      out.push_back(b);
      return;
    }
    for (int c : nodes_[b].children) collect_vertices(c, out);
  }
  bool contains(int b, int v) const {
    while (v != -1) {
      if (v == b) return true;
      v = nodes_[v].parent;
    }
    return false;
  }

  /// Re-root the blossom so that vertex v is its exposed vertex, updating
  /// internal matchings recursively.
  void make_base(int b, int v) {
    if (b < k_) return;
    Bnode& nb = nodes_[b];
    int sz = static_cast<int>(nb.children.size());
    int idx = -1;
    for (int i = 0; i < sz; ++i)
      if (contains(nb.children[i], v)) {
        idx = i;
        break;
      }
    if (idx < 0) throw std::logic_error("mwpm: make_base vertex not in blossom");
    if (idx != 0) {
      std::rotate(nb.children.begin(), nb.children.begin() + idx, nb.children.end());
      std::rotate(nb.cycle.begin(), nb.cycle.begin() + idx, nb.cycle.end());
    }
    for (int i = 1; i < sz; i += 2) {
      auto [a, c] = nb.cycle[i];
      nodes_[nb.children[i]].match = nb.children[i + 1];
      nodes_[nb.children[i]].match_edge = {a, c};
      nodes_[nb.children[i + 1]].match = nb.children[i];
      nodes_[nb.children[i + 1]].match_edge = {c, a};
      make_base(nb.children[i], a);
      make_base(nb.children[i + 1], c);
    }
    make_base(nb.children[0], v);
  }

  void collect_internal(int b, std::vector<std::pair<int, int>>& pairs) const {
    if (b < k_) return;
    const Bnode& nb = nodes_[b];
    for (int i = 1; i < static_cast<int>(nb.children.size()); i += 2)
      pairs.push_back(nb.cycle[i]);
    for (int c : nb.children) collect_internal(c, pairs);
  }

  void clear_tree() {
    for (Bnode& nb : nodes_) {
      nb.label = 0;
      nb.tree_parent = -1;
      nb.tree_edge = {-1, -1};
    }
  }

  std::vector<int> outer_nodes() const {
    std::vector<int> out;
    for (int b = 0; b < static_cast<int>(nodes_.size()); ++b)
      if (nodes_[b].alive && nodes_[b].parent == -1) out.push_back(b);
    return out;
  }

  void set_match(int b, int partner, std::pair<int, int> edge) {
    nodes_[b].match = partner;
    nodes_[b].match_edge = edge;
    make_base(b, edge.first);
  }

  /// Flip matched/unmatched status along the tree path from outer node u up
  /// to the root. u must already hold its new match.
  void flip_to_root(int u) {
    int node = u;
    while (true) {
      int p1 = nodes_[node].tree_parent;
      if (p1 == -1) break;
      int p2 = nodes_[p1].tree_parent;
      if (p2 == -1) throw std::logic_error("mwpm: minus node at tree root");
      auto [in_p2, in_p1] = nodes_[p1].tree_edge;
      set_match(p1, p2, {in_p1, in_p2});
      set_match(p2, p1, {in_p2, in_p1});
      node = p2;
    }
    clear_tree();
  }

  void attach(int plus_outer, std::pair<int, int> edge, int minus_outer) {
    nodes_[minus_outer].label = -1;
    nodes_[minus_outer].tree_parent = plus_outer;
    nodes_[minus_outer].tree_edge = edge;
    int m = nodes_[minus_outer].match;
    nodes_[m].label = 1;
    nodes_[m].tree_parent = minus_outer;
    nodes_[m].tree_edge = {nodes_[m].match_edge.second, nodes_[m].match_edge.first};
  }

  void contract(int u, int v) {
    int bu = outer(u), bv = outer(v);
    // Find the least common ancestor in the alternating tree.
    std::vector<bool> mark(nodes_.size(), false);
    for (int x = bu; x != -1; x = nodes_[x].tree_parent) mark[x] = true;
    int lca = bv;
    while (!mark[lca]) lca = nodes_[lca].tree_parent;

    std::vector<int> path_u, path_v;
    for (int x = bu; x != lca; x = nodes_[x].tree_parent) path_u.push_back(x);
    for (int x = bv; x != lca; x = nodes_[x].tree_parent) path_v.push_back(x);

    Bnode nb;
    nb.alive = true;
    nb.label = 1;
    nb.children.push_back(lca);
    for (auto it = path_u.rbegin(); it != path_u.rend(); ++it) nb.children.push_back(*it);
    for (int x : path_v) nb.children.push_back(x);
    // Cycle edges: down the u side via stored tree edges, across (u, v),
    // then up the v side with orientations flipped.
    for (auto it = path_u.rbegin(); it != path_u.rend(); ++it)
      nb.cycle.push_back(nodes_[*it].tree_edge);
    nb.cycle.emplace_back(u, v);
    for (int x : path_v)
      nb.cycle.push_back({nodes_[x].tree_edge.second, nodes_[x].tree_edge.first});
    if (nb.cycle.size() != nb.children.size() || nb.children.size() % 2 == 0)
      throw std::logic_error("mwpm: malformed blossom cycle");

    nb.match = nodes_[lca].match;
    nb.match_edge = nodes_[lca].match_edge;
    nb.tree_parent = nodes_[lca].tree_parent;
    nb.tree_edge = nodes_[lca].tree_edge;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(nb));
    for (int c : nodes_[id].children) {
      nodes_[c].parent = id;
      nodes_[c].label = 0;
    }
    for (int b = 0; b < id; ++b) {
      Bnode& x = nodes_[b];
      if (!x.alive || x.parent != -1) continue;
      if (x.tree_parent != -1 && nodes_[x.tree_parent].parent != -1)
        x.tree_parent = outer(x.tree_parent);
      if (x.match >= 0 && nodes_[x.match].parent != -1) x.match = outer(x.match);
    }
  }

  void expand(int b) {
    Bnode& nb = nodes_[b];
    make_base(b, nb.match_edge.first);
    int sz = static_cast<int>(nb.children.size());
    for (int c : nb.children) nodes_[c].parent = -1;
    nodes_[nb.children[0]].match = nb.match;
    nodes_[nb.children[0]].match_edge = nb.match_edge;
    if (nb.match >= 0) nodes_[nb.match].match = nb.children[0];

    // Re-thread the alternating tree through the even-length side of the
    // cycle from the entry child to the base.
    int t = -1;
    for (int i = 0; i < sz; ++i)
      if (contains(nb.children[i], nb.tree_edge.second)) {
        t = i;
        break;
      }
    if (t < 0) throw std::logic_error("mwpm: expand entry not found");
    // Walk toward the base along whichever direction gives an even number
    // of cycle edges: backward t, t-1, ..., 0 when t is even, forward
    // t, t+1, ..., sz-1, 0 when t is odd.
    std::vector<int> path;
    std::vector<bool> on(sz, false);
    if (t % 2 == 0) {
      for (int i = t; i >= 0; --i) path.push_back(i);
    } else {
      for (int i = t; i < sz; ++i) path.push_back(i);
      path.push_back(0);
    }
    for (int i : path) on[i] = true;

    nodes_[nb.children[t]].label = -1;
    nodes_[nb.children[t]].tree_parent = nb.tree_parent;
    nodes_[nb.children[t]].tree_edge = nb.tree_edge;
    for (std::size_t s = 1; s < path.size(); ++s) {
      int cur = nb.children[path[s]], prev = nb.children[path[s - 1]];
      nodes_[cur].label = (s % 2 == 0) ? -1 : 1;
      nodes_[cur].tree_parent = prev;
      // Cycle edge between path[s-1] and path[s], oriented parent -> child.
      int lo = path[s - 1], hi = path[s];
      if ((lo + 1) % sz == hi)
        nodes_[cur].tree_edge = nb.cycle[lo];
      else if ((hi + 1) % sz == lo)
        nodes_[cur].tree_edge = {nb.cycle[hi].second, nb.cycle[hi].first};
      else
        throw std::logic_error("mwpm: expand path not on cycle");
    }
    for (int i = 0; i < sz; ++i)
      if (!on[i]) {
        nodes_[nb.children[i]].label = 0;
        nodes_[nb.children[i]].tree_parent = -1;
      }
    for (int x = 0; x < static_cast<int>(nodes_.size()); ++x) {
      Bnode& nx = nodes_[x];
      if (!nx.alive || nx.parent != -1 || x == b) continue;
      if (nx.tree_parent == b) nx.tree_parent = outer(nx.tree_edge.first);
      if (nx.match == b) nx.match = outer(nx.match_edge.second);
    }
    nb.alive = false;
  }

  void run_phase(int root) {
    clear_tree();
    nodes_[root].label = 1;
    int guard = 0;
    const int guard_cap = 64 * (k_ + 2) * (k_ + 2) + 256;

    while (true) {
      if (++guard > guard_cap) throw std::logic_error("mwpm: phase failed to terminate");
      std::vector<int> outs = outer_nodes();
      bool event = false;

      // Augment to the boundary from any plus node with a tight boundary slack.
      for (int b : outs) {
        if (nodes_[b].label != 1) continue;
        std::vector<int> vs;
        collect_vertices(b, vs);
        for (int u : vs)
          if (bslack(u) <= kTol) {
            set_match(b, kBoundaryMatch, {u, -1});
            flip_to_root(b);
            return;
          }
      }
      // Tight edges from plus nodes to out-of-tree nodes: augment or attach.
      for (int b : outs) {
        if (nodes_[b].label != 1 || event) continue;
        std::vector<int> vs;
        collect_vertices(b, vs);
        for (int u : vs) {
          for (int v = 0; v < k_ && !event; ++v) {
            int bv = outer(v);
            if (bv == b || nodes_[bv].label != 0) continue;
            if (slack(u, v) > kTol) continue;
            if (nodes_[bv].match == -1 || nodes_[bv].match == kBoundaryMatch) {
              set_match(bv, b, {v, u});
              set_match(b, bv, {u, v});
              flip_to_root(b);
              return;
            }
            attach(b, {u, v}, bv);
            event = true;
          }
          if (event) break;
        }
      }
      if (event) continue;
      // Tight plus-plus edges: contract a new blossom.
      for (int b : outs) {
        if (nodes_[b].label != 1 || event) continue;
        std::vector<int> vs;
        collect_vertices(b, vs);
        for (int u : vs) {
          for (int v = 0; v < k_ && !event; ++v) {
            int bv = outer(v);
            if (bv == b || nodes_[bv].label != 1) continue;
            if (slack(u, v) > kTol) continue;
            contract(u, v);
            event = true;
          }
          if (event) break;
        }
      }
      if (event) continue;
      // Expand minus blossoms out of duals.
      for (int b : outs) {
        if (b >= k_ && nodes_[b].label == -1 && nodes_[b].y <= kTol) {
          expand(b);
          event = true;
          break;
        }
      }
      if (event) continue;

      // Dual update.
      double delta = kInf;
      for (int b : outs) {
        const Bnode& nb = nodes_[b];
        if (nb.label == 1) {
          std::vector<int> vs;
          collect_vertices(b, vs);
          for (int u : vs) {
            delta = std::min(delta, bslack(u));
            for (int v = 0; v < k_; ++v) {
              int bv = outer(v);
              if (bv == b) continue;
              if (nodes_[bv].label == 0) delta = std::min(delta, slack(u, v));
              if (nodes_[bv].label == 1) delta = std::min(delta, slack(u, v) / 2);
            }
          }
        } else if (nb.label == -1) {
          delta = std::min(delta, nb.y);  // vertex triangle event or blossom expand
        }
      }
      if (!std::isfinite(delta) || delta < -kTol)
        throw std::logic_error("mwpm: invalid dual step");
      delta = std::max(delta, 0.0);
      for (int b : outs)
        if (nodes_[b].label != 0) nodes_[b].y += nodes_[b].label * delta;
    }
  }
};

double dual_cross(const MatchingResult& res, int gu, int gv) {
  double s = 0;
  for (const DualSet& ds : res.duals) {
    bool has_u = std::find(ds.vertices.begin(), ds.vertices.end(), gu) != ds.vertices.end();
    bool has_v = std::find(ds.vertices.begin(), ds.vertices.end(), gv) != ds.vertices.end();
    if (has_u != has_v) s += ds.y;
  }
  return s;
}

}  // namespace

MatchingResult mwpm_decode(const DecodingGraph& graph, const std::vector<bool>& syndrome) {
  SyndromeGraph sg = build_syndrome_graph(graph, syndrome);
  if (graph.boundary().empty()) {
    // No boundary: the syndrome must have even parity (cycle graphs).
    if (sg.size() % 2 != 0) throw std::invalid_argument("mwpm: odd syndrome without boundary");
    for (int i = 0; i < sg.size(); ++i) sg.boundary_dist[i] = kInf;
  }
  BlossomSolver solver(sg);
  solver.solve();
  return solver.extract(graph);
}

double pair_slack(const SyndromeGraph& sg, const MatchingResult& res, int i, int j) {
  return sg.dist[i][j] - dual_cross(res, sg.nodes[i], sg.nodes[j]);
}

double boundary_slack(const SyndromeGraph& sg, const MatchingResult& res, int i) {
  double s = 0;
  for (const DualSet& ds : res.duals)
    if (std::find(ds.vertices.begin(), ds.vertices.end(), sg.nodes[i]) != ds.vertices.end())
      s += ds.y;
  return sg.boundary_dist[i] - s;
}

namespace {

struct ParityDijkstra {
  std::vector<std::array<double, 2>> dist;
  std::vector<std::array<int, 2>> par_edge;
  std::vector<std::array<int, 2>> par_state;  // packed v*2+parity
};

ParityDijkstra parity_dijkstra(const DecodingGraph& graph, int source, int b1) {
  const int n = graph.num_vertices();
  ParityDijkstra out;
  out.dist.assign(n, {kInf, kInf});
  out.par_edge.assign(n, {kNoVertex, kNoVertex});
  out.par_state.assign(n, {-1, -1});
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
  out.dist[source][0] = 0;
  pq.emplace(0.0, source * 2);
  while (!pq.empty()) {
    auto [d, s] = pq.top();
    pq.pop();
    int v = s / 2, par = s % 2;
    if (d > out.dist[v][par]) continue;
    for (auto [e, w] : graph.incident(v)) {
      const Edge& ed = graph.edge(e);
      int np = par ^ ((ed.u == b1 || ed.v == b1) ? 1 : 0);
      double nd = d + ed.weight;
      if (nd < out.dist[w][np]) {
        out.dist[w][np] = nd;
        out.par_edge[w][np] = e;
        out.par_state[w][np] = s;
        pq.emplace(nd, w * 2 + np);
      }
    }
  }
  return out;
}

std::vector<int> parity_path(const ParityDijkstra& pd, int target, int parity) {
  std::vector<int> path;
  int v = target, par = parity;
  while (pd.par_edge[v][par] != kNoVertex) {
    path.push_back(pd.par_edge[v][par]);
    int s = pd.par_state[v][par];
    v = s / 2;
    par = s % 2;
  }
  return path;
}

}  // namespace

OppositeClassResult min_weight_opposite_class(const DecodingGraph& graph,
                                              const std::vector<bool>& syndrome,
                                              const std::vector<int>& correction) {
  if (graph.logical_kind() == LogicalKind::Cycle) {
    std::vector<bool> in_f(graph.num_edges(), false);
    for (int e : correction) in_f[e] = true;
    OppositeClassResult out{{}, 0};
    for (int e = 0; e < graph.num_edges(); ++e)
      if (!in_f[e]) {
        out.edges.push_back(e);
        out.weight += graph.edge(e).weight;
      }
    return out;
  }
  if (graph.boundary().size() < 2)
    throw std::invalid_argument("opposite class needs two boundaries");
  const int b1 = graph.boundary()[0], b2 = graph.boundary()[1];

  std::vector<int> nodes;
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i)
    if (syndrome[i]) nodes.push_back(graph.syndrome_vertices()[i]);
  const int k = static_cast<int>(nodes.size());
  if (k > 20) throw std::invalid_argument("opposite class oracle: syndrome too large");

  int f_class = 0;
  for (int e : correction) {
    const Edge& ed = graph.edge(e);
    if (ed.u == b1 || ed.v == b1) f_class ^= 1;
  }
  const int target = f_class ^ 1;

  std::vector<ParityDijkstra> pd;
  pd.reserve(k);
  for (int i = 0; i < k; ++i) pd.push_back(parity_dijkstra(graph, nodes[i], b1));
  ParityDijkstra pd_b1 = parity_dijkstra(graph, b1, b1);
  const double crossing = pd_b1.dist[b2][1];

  // f[mask][par]: cheapest pairing of the masked vertices whose total b1
  // incidence parity is par. Each vertex pairs with another or exits at a
  // boundary vertex.
  const int full = (1 << k) - 1;
  std::vector<std::array<double, 2>> f(full + 1, {kInf, kInf});
  // choice: (partner index or -1-boundaryVertex, path parity)
  std::vector<std::array<std::pair<int, int>, 2>> choice(full + 1);
  f[0] = {0.0, kInf};
  for (int mask = 1; mask <= full; ++mask) {
    int i = 0;
    while (!(mask & (1 << i))) ++i;
    for (int par = 0; par < 2; ++par) {
      double& best = f[mask][par];
      for (int q = 0; q < 2; ++q) {
        int rest = mask & ~(1 << i);
        // boundary exit at b1 or b2
        for (int b : {b1, b2}) {
          double d = pd[i].dist[b][q];
          if (!std::isfinite(d)) continue;
          double cand = f[rest][par ^ q] + d;
          if (cand < best) {
            best = cand;
            choice[mask][par] = {-1 - b, q};
          }
        }
        for (int j = i + 1; j < k; ++j) {
          if (!(mask & (1 << j))) continue;
          double d = pd[i].dist[nodes[j]][q];
          if (!std::isfinite(d)) continue;
          double cand = f[rest & ~(1 << j)][par ^ q] + d;
          if (cand < best) {
            best = cand;
            choice[mask][par] = {j, q};
          }
        }
      }
    }
  }

  bool add_crossing = false;
  double best = f[full][target];
  if (std::isfinite(crossing) && f[full][target ^ 1] + crossing < best) {
    best = f[full][target ^ 1] + crossing;
    add_crossing = true;
  }
  if (!std::isfinite(best)) throw std::runtime_error("opposite class: no solution");

  std::vector<int> parity_vec(graph.num_edges(), 0);
  int mask = full, par = add_crossing ? target ^ 1 : target;
  if (add_crossing)
    for (int e : parity_path(pd_b1, b2, 1)) parity_vec[e] ^= 1;
  while (mask) {
    int i = 0;
    while (!(mask & (1 << i))) ++i;
    auto [who, q] = choice[mask][par];
    std::vector<int> path;
    if (who < 0)
      path = parity_path(pd[i], -1 - who, q);
    else
      path = parity_path(pd[i], nodes[who], q);
    for (int e : path) parity_vec[e] ^= 1;
    mask &= ~(1 << i);
    if (who >= 0) mask &= ~(1 << who);
    par ^= q;
  }

  OppositeClassResult out{{}, 0};
  for (int e = 0; e < graph.num_edges(); ++e)
    if (parity_vec[e]) {
      out.edges.push_back(e);
      out.weight += graph.edge(e).weight;
    }
  if (std::abs(out.weight - best) > 1e-6 * (1 + best))
    throw std::logic_error("opposite class: path reconstruction mismatch");
  return out;
}

}  // namespace softout
