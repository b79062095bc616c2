#pragma once

#include <optional>
#include <string>
#include <vector>

#include "softout/gf2.hpp"
#include "softout/graph.hpp"

namespace softout {

/// CSS code given by its X/Z check matrices, with logical operator bases.
struct CssCode {
  BitMatrix h_x;  ///< r_X x n
  BitMatrix h_z;  ///< r_Z x n
  BitMatrix l_x;  ///< k x n, L_X[i] anticommutes exactly with L_Z[i]
  BitMatrix l_z;  ///< k x n

  std::size_t n() const { return h_z.cols(); }
  std::size_t k() const { return l_z.rows(); }
};

/// k independent logical pairs via GF(2) elimination: L_Z spans
/// ker(H_X)/rowspace(H_Z), L_X spans ker(H_Z)/rowspace(H_X), recombined so
/// that L_X L_Z^T = I. Lowest-index pivot order for determinism.
std::pair<BitMatrix, BitMatrix> logical_basis(const BitMatrix& h_x, const BitMatrix& h_z);

enum class SurfaceVariant { Planar, Rotated };

struct SurfaceCode {
  CssCode code;
  DecodingGraph z_graph;  ///< detects X errors (vertices = Z checks)
  DecodingGraph x_graph;  ///< detects Z errors (vertices = X checks)
  int d;
  int b1, b2;  ///< inequivalent boundaries of z_graph (same ids in x_graph)
};

/// Length-n repetition code on the cycle graph; the boundary is made real
/// by a redundant check on the first and last bits, so H_Z is n x n.
struct RepetitionCode {
  CssCode code;
  DecodingGraph graph;  ///< n-cycle, LogicalKind::Cycle, unit weights
};

RepetitionCode repetition_code(int n);

/// d odd, d >= 3. Rotated: n = d^2; planar: n = d^2 + (d-1)^2. Graphs have
/// unit weights; reweight before decoding.
SurfaceCode surface_code(int d, SurfaceVariant variant);

/// Same topology with every edge weight replaced by w.
DecodingGraph with_uniform_weight(const DecodingGraph& graph, double w);

struct SpacetimeGraphSpec {
  int rounds;   ///< T >= 1
  double p;     ///< data-error probability, in (0, 1/2)
  double q;     ///< measurement-error probability, in (0, 1/2)
};

/// T stacked copies of the 2D graph. Data edges of round t keep the 2D
/// fault structure with weight ln((1-p)/p) and fault id t*n_q + q; vertical
/// measurement edges join copies of each check vertex with weight
/// ln((1-q)/q) and fault id T*n_q + t*n_checks + c. The final round has no
/// measurement edges (perfect readout), and boundary vertices are merged
/// across time into b1, b2.
struct SpacetimeGraph {
  DecodingGraph graph;
  int rounds;
  int n_qubits;      ///< faults per round of data noise (2D edges)
  int n_checks;      ///< 2D syndrome vertices
  int b1, b2;
  double data_weight;
  double meas_weight;

  int data_fault_id(int t, int q) const { return t * n_qubits + q; }
  int meas_fault_id(int t, int c) const { return rounds * n_qubits + t * n_checks + c; }
  /// Spacetime vertex of 2D syndrome-vertex index i at round t.
  int vertex(int t, int i) const { return t * n_checks + i; }
};

SpacetimeGraph spacetime_graph(const DecodingGraph& graph2d, const SpacetimeGraphSpec& spec);

/// Quasi-cyclic lifted product code. The base matrix holds exponent sets
/// over Z_ell (a monomial x^a is the singleton {a}).
struct QclpSpec {
  std::vector<std::vector<std::vector<int>>> base;  ///< m x n' entries
  int lift;                                         ///< ell
};

CssCode qclp_code(const QclpSpec& spec);

/// The 3x5 monomial base matrix with lift 31 yielding [[1054, 140]].
QclpSpec qclp_1054_140_spec();

/// Sparse alist-style text serialization of a check matrix.
std::string to_alist(const BitMatrix& m);
BitMatrix from_alist(const std::string& text);

}  // namespace softout
