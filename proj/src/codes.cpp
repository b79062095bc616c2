#include "softout/codes.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace softout {

std::pair<BitMatrix, BitMatrix> logical_basis(const BitMatrix& h_x, const BitMatrix& h_z) {
  const std::size_t n = h_z.cols();
  if (h_x.cols() != 0 && h_x.cols() != n) throw std::invalid_argument("check matrix widths differ");

  auto quotient_basis = [n](const BitMatrix& ker_of, const BitMatrix& mod_rows) {
    BitMatrix kernel = ker_of.kernel_basis();
    Gf2Echelon ech(n);
    for (std::size_t r = 0; r < mod_rows.rows(); ++r) ech.add_row(mod_rows.row(r));
    std::vector<std::vector<bool>> picked;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
      auto row = kernel.row(r);
      if (ech.add_row(row)) picked.push_back(row);
    }
    BitMatrix out(picked.size(), n);
    for (std::size_t i = 0; i < picked.size(); ++i) out.set_row(i, picked[i]);
    return out;
  };

  BitMatrix hx = h_x.cols() == n ? h_x : BitMatrix(0, n);
  BitMatrix l_z = quotient_basis(hx, h_z);
  BitMatrix l_x = quotient_basis(h_z, hx);
  if (l_x.rows() != l_z.rows()) throw std::runtime_error("logical basis rank mismatch");
  if (l_z.rows() == 0) return {l_x, l_z};

  // Recombine L_X so the symplectic pairing is the identity.
  BitMatrix gram = l_x.multiply(l_z.transposed());
  l_x = gram.inverted().multiply(l_x);
  return {l_x, l_z};
}

RepetitionCode repetition_code(int n) {
  if (n < 2) throw std::invalid_argument("repetition code needs n >= 2");
  // Checks 0..n-2 compare adjacent bits; check n-1 is the redundant row on
  // the first and last bits, making the cycle closed.
  BitMatrix h_z(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    h_z.set(i, i, true);
    h_z.set(i, i + 1, true);
  }
  h_z.set(n - 1, 0, true);
  h_z.set(n - 1, n - 1, true);

  // bit 0 is in checks {0, n-1}; bit i (0<i<n-1) in {i-1, i}; bit n-1 in {n-2, n-1}.
  std::vector<Edge> edges;
  edges.push_back({n - 1, 0, 1.0, 0});
  for (int i = 1; i + 1 < n; ++i) edges.push_back({i - 1, i, 1.0, i});
  edges.push_back({n - 2, n - 1, 1.0, n - 1});

  CssCode code;
  code.h_x = BitMatrix(0, n);
  code.h_z = h_z;
  // l_x is the unique nontrivial element of ker(H_Z): the full cycle. For
  // odd n the same vector works as l_z; for even n all-ones is a sum of
  // checks, so a single bit represents the Z logical instead.
  code.l_z = BitMatrix(1, n);
  code.l_x = BitMatrix(1, n);
  for (int i = 0; i < n; ++i) code.l_x.set(0, i, true);
  if (n % 2 == 1)
    for (int i = 0; i < n; ++i) code.l_z.set(0, i, true);
  else
    code.l_z.set(0, 0, true);
  return {std::move(code), DecodingGraph(n, {}, std::move(edges), LogicalKind::Cycle)};
}

namespace {

/// Decoding graph from a check matrix whose columns have support <= 2.
/// `side` gives the boundary (0 -> b1, 1 -> b2) for single-support columns.
DecodingGraph graph_from_checks(const BitMatrix& h, const std::vector<int>& side) {
  const int r = static_cast<int>(h.rows());
  const int n = static_cast<int>(h.cols());
  const int b1 = r, b2 = r + 1;
  std::vector<Edge> edges;
  for (int q = 0; q < n; ++q) {
    std::vector<int> supp;
    for (int c = 0; c < r; ++c)
      if (h.get(c, q)) supp.push_back(c);
    if (supp.size() == 2) {
      edges.push_back({supp[0], supp[1], 1.0, q});
    } else if (supp.size() == 1) {
      edges.push_back({supp[0], side[q] == 0 ? b1 : b2, 1.0, q});
    } else {
      throw std::invalid_argument("column support must be 1 or 2");
    }
  }
  return DecodingGraph(r + 2, {b1, b2}, std::move(edges));
}

SurfaceCode rotated_surface_code(int d) {
  const int n = d * d;
  auto qubit = [d](int r, int c) { return r * d + c; };

  // Plaquette (R, C), 0 <= R, C <= d, touches the grid qubits among
  // (R-1,C-1), (R-1,C), (R,C-1), (R,C). Z plaquettes have R+C even: bulk
  // plus weight-2 checks on the top and bottom rows. X plaquettes have
  // R+C odd: bulk plus weight-2 checks on the left and right columns.
  auto plaquette_support = [&](int R, int C) {
    std::vector<int> supp;
    for (int dr = -1; dr <= 0; ++dr)
      for (int dc = -1; dc <= 0; ++dc) {
        int r = R + dr, c = C + dc;
        if (r >= 0 && r < d && c >= 0 && c < d) supp.push_back(qubit(r, c));
      }
    return supp;
  };

  std::vector<std::vector<int>> z_checks, x_checks;
  for (int R = 1; R < d; ++R)
    for (int C = 1; C < d; ++C)
      ((R + C) % 2 == 0 ? z_checks : x_checks).push_back(plaquette_support(R, C));
  for (int C = 1; C < d; ++C) {
    if (C % 2 == 0) z_checks.push_back(plaquette_support(0, C));
    if ((d + C) % 2 == 0) z_checks.push_back(plaquette_support(d, C));
  }
  for (int R = 1; R < d; ++R) {
    if (R % 2 == 1) x_checks.push_back(plaquette_support(R, 0));
    if ((R + d) % 2 == 1) x_checks.push_back(plaquette_support(R, d));
  }

  auto to_matrix = [n](const std::vector<std::vector<int>>& checks) {
    BitMatrix m(checks.size(), n);
    for (std::size_t i = 0; i < checks.size(); ++i)
      for (int q : checks[i]) m.set(i, q, true);
    return m;
  };
  BitMatrix h_z = to_matrix(z_checks);
  BitMatrix h_x = to_matrix(x_checks);

  // X-error chains terminate undetected on the left/right columns; Z-error
  // chains on the top/bottom rows.
  std::vector<int> z_side(n), x_side(n);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      z_side[qubit(r, c)] = c < d / 2 ? 0 : 1;
      x_side[qubit(r, c)] = r < d / 2 ? 0 : 1;
    }

  SurfaceCode sc{
      CssCode{h_x, h_z, BitMatrix(), BitMatrix()},
      graph_from_checks(h_z, z_side),
      graph_from_checks(h_x, x_side),
      d,
      static_cast<int>(z_checks.size()),
      static_cast<int>(z_checks.size()) + 1,
  };
  std::tie(sc.code.l_x, sc.code.l_z) = logical_basis(h_x, h_z);
  return sc;
}

SurfaceCode planar_surface_code(int d) {
  const int n = d * d + (d - 1) * (d - 1);
  // Z checks on a d x (d-1) grid; X checks on the dual (d-1) x d grid.
  // "A" qubits are the horizontal primal edges (d per row), "B" qubits the
  // vertical primal edges.
  auto zc = [d](int r, int c) { return r * (d - 1) + c; };
  auto xc = [d](int s, int t) { return s * d + t; };
  auto qa = [d](int r, int k) { return r * d + k; };
  auto qb = [d](int s, int c) { return d * d + s * (d - 1) + c; };

  BitMatrix h_z(d * (d - 1), n);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d - 1; ++c) {
      h_z.set(zc(r, c), qa(r, c), true);
      h_z.set(zc(r, c), qa(r, c + 1), true);
      if (r >= 1) h_z.set(zc(r, c), qb(r - 1, c), true);
      if (r <= d - 2) h_z.set(zc(r, c), qb(r, c), true);
    }
  BitMatrix h_x((d - 1) * d, n);
  for (int s = 0; s < d - 1; ++s)
    for (int t = 0; t < d; ++t) {
      h_x.set(xc(s, t), qa(s, t), true);
      h_x.set(xc(s, t), qa(s + 1, t), true);
      if (t >= 1) h_x.set(xc(s, t), qb(s, t - 1), true);
      if (t <= d - 2) h_x.set(xc(s, t), qb(s, t), true);
    }

  std::vector<int> z_side(n, 0), x_side(n, 0);
  for (int r = 0; r < d; ++r)
    for (int k = 0; k < d; ++k) {
      z_side[qa(r, k)] = k < d / 2 ? 0 : 1;   // left/right boundary columns
      x_side[qa(r, k)] = r < d / 2 ? 0 : 1;   // top/bottom for the dual graph
    }

  SurfaceCode sc{
      CssCode{h_x, h_z, BitMatrix(), BitMatrix()},
      graph_from_checks(h_z, z_side),
      graph_from_checks(h_x, x_side),
      d,
      d * (d - 1),
      d * (d - 1) + 1,
  };
  std::tie(sc.code.l_x, sc.code.l_z) = logical_basis(h_x, h_z);
  return sc;
}

}  // namespace

SurfaceCode surface_code(int d, SurfaceVariant variant) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("surface code needs odd d >= 3");
  return variant == SurfaceVariant::Rotated ? rotated_surface_code(d)
                                            : planar_surface_code(d);
}

DecodingGraph with_uniform_weight(const DecodingGraph& graph, double w) {
  if (!(w > 0)) throw std::invalid_argument("weight must be positive");
  std::vector<Edge> edges = graph.edges();
  for (Edge& e : edges) e.weight = w;
  return DecodingGraph(graph.num_vertices(), graph.boundary(), std::move(edges),
                       graph.logical_kind());
}

SpacetimeGraph spacetime_graph(const DecodingGraph& graph2d, const SpacetimeGraphSpec& spec) {
  if (spec.rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (!(spec.p > 0 && spec.p < 0.5) || !(spec.q > 0 && spec.q < 0.5))
    throw std::invalid_argument("probabilities must lie in (0, 1/2)");
  if (graph2d.boundary().size() != 2)
    throw std::invalid_argument("spacetime graph needs a two-boundary 2D graph");

  const int T = spec.rounds;
  const int n_checks = graph2d.num_syndrome_vertices();
  const int n_qubits = graph2d.num_edges();
  const int b1 = T * n_checks, b2 = T * n_checks + 1;
  const double w_data = std::log((1 - spec.p) / spec.p);
  const double w_meas = std::log((1 - spec.q) / spec.q);

  const int old_b1 = graph2d.boundary()[0];
  std::vector<Edge> edges;
  for (int t = 0; t < T; ++t) {
    for (int e = 0; e < n_qubits; ++e) {
      const Edge& ed = graph2d.edge(e);
      auto map_vertex = [&](int v) {
        if (graph2d.is_boundary(v)) return v == old_b1 ? b1 : b2;
        return t * n_checks + graph2d.syndrome_index(v);
      };
      edges.push_back({map_vertex(ed.u), map_vertex(ed.v), w_data, t * n_qubits + ed.fault_id});
    }
    if (t + 1 < T)
      for (int i = 0; i < n_checks; ++i)
        edges.push_back({t * n_checks + i, (t + 1) * n_checks + i, w_meas,
                         T * n_qubits + t * n_checks + i});
  }
  return SpacetimeGraph{DecodingGraph(T * n_checks + 2, {b1, b2}, std::move(edges)),
                        T, n_qubits, n_checks, b1, b2, w_data, w_meas};
}

std::string to_alist(const BitMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<std::size_t>> col_supp(cols), row_supp(rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (m.get(r, c)) {
        col_supp[c].push_back(r + 1);
        row_supp[r].push_back(c + 1);
      }
  std::size_t max_col = 0, max_row = 0;
  for (auto& s : col_supp) max_col = std::max(max_col, s.size());
  for (auto& s : row_supp) max_row = std::max(max_row, s.size());

  std::ostringstream out;
  out << cols << ' ' << rows << '\n' << max_col << ' ' << max_row << '\n';
  for (std::size_t c = 0; c < cols; ++c) out << col_supp[c].size() << (c + 1 < cols ? ' ' : '\n');
  for (std::size_t r = 0; r < rows; ++r) out << row_supp[r].size() << (r + 1 < rows ? ' ' : '\n');
  for (auto& s : col_supp) {
    for (std::size_t i = 0; i < s.size(); ++i) out << s[i] << (i + 1 < s.size() ? ' ' : '\n');
    if (s.empty()) out << '\n';
  }
  for (auto& s : row_supp) {
    for (std::size_t i = 0; i < s.size(); ++i) out << s[i] << (i + 1 < s.size() ? ' ' : '\n');
    if (s.empty()) out << '\n';
  }
  return out.str();
}

BitMatrix from_alist(const std::string& text) {
  std::istringstream in(text);
  std::size_t cols, rows, max_col, max_row;
  if (!(in >> cols >> rows >> max_col >> max_row)) throw std::invalid_argument("bad alist header");
  std::vector<std::size_t> col_deg(cols), row_deg(rows);
  for (auto& d : col_deg) in >> d;
  for (auto& d : row_deg) in >> d;
  BitMatrix m(rows, cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (std::size_t i = 0; i < col_deg[c]; ++i) {
      std::size_t r;
      in >> r;
      m.set(r - 1, c, true);
    }
  if (!in) throw std::invalid_argument("truncated alist");
  return m;
}

}  // namespace softout
