#include "softout/soft_output.hpp"

#include <cmath>
#include <stdexcept>

namespace softout {

double soft_output(const DecodingGraph& graph, const RadiiAssignment& radii,
                   int b1, int b2) {
  // Coverage and components depend only on the radii; an all-zero syndrome
  // leaves degenerate point clusters that do not affect path lengths.
  std::vector<bool> no_syndrome(graph.num_syndrome_vertices(), false);
  ClusterSet cs = clusters(graph, radii, no_syndrome);
  return quotient_shortest_path(graph, cs, b1, b2);
}

double rep_phi_closed_form(int n, int correction_weight, double w) {
  if (correction_weight < 0 || 2 * correction_weight > n)
    throw std::invalid_argument("rep phi: |F| must satisfy 0 <= |F| <= n/2");
  return (n - 2 * correction_weight) * w;
}

double exhaustive_llr(const DecodingGraph& graph, const std::vector<bool>& syndrome,
                      const std::vector<int>& correction, double p) {
  const int m = graph.num_edges();
  if (m > 24) throw std::invalid_argument("exhaustive llr: too many fault locations");
  if (!(p > 0 && p < 1)) throw std::invalid_argument("exhaustive llr: p outside (0,1)");

  uint32_t f_bits = 0;
  for (int e : correction) f_bits |= uint32_t(1) << e;

  // Syndrome bit pattern per error, accumulated edge by edge.
  std::vector<uint64_t> edge_syndrome(m, 0);
  for (int e = 0; e < m; ++e) {
    const Edge& ed = graph.edge(e);
    int iu = graph.syndrome_index(ed.u), iv = graph.syndrome_index(ed.v);
    if (iu != kNoVertex) edge_syndrome[e] ^= uint64_t(1) << iu;
    if (iv != kNoVertex) edge_syndrome[e] ^= uint64_t(1) << iv;
  }
  uint64_t target = 0;
  for (int i = 0; i < graph.num_syndrome_vertices(); ++i)
    if (syndrome[i]) target |= uint64_t(1) << i;

  // Accumulate the two sides separately: z - pf would cancel destructively
  // when the alternative class is exponentially unlikely.
  long double pf = 0, pother = 0;
  bool f_seen = false;
  const long double lp = p, lq = 1 - lp;
  for (uint32_t bits = 0; bits < (uint32_t(1) << m); ++bits) {
    uint64_t s = 0;
    int wgt = __builtin_popcount(bits);
    for (uint32_t b = bits; b; b &= b - 1) s ^= edge_syndrome[__builtin_ctz(b)];
    if (s != target) continue;
    long double prob = std::pow(lp, wgt) * std::pow(lq, m - wgt);
    if (bits == f_bits) {
      pf += prob;
      f_seen = true;
    } else {
      pother += prob;
    }
  }
  if (!f_seen) throw std::invalid_argument("exhaustive llr: correction has wrong syndrome");
  return static_cast<double>(std::log(pf) - std::log(pother));
}

CombinedSoftOutput combine_windows(const std::vector<double>& phis) {
  double q = 0;
  for (double phi : phis) {
    if (phi < 0) throw std::invalid_argument("combine_windows: negative phi");
    q += 1.0 / (1.0 + std::exp(phi));
  }
  if (q >= 1.0) return {0.0, true};
  return {std::log((1.0 - q) / q), false};
}

}  // namespace softout
