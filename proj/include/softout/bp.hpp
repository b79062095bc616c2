#pragma once

#include <vector>

#include "softout/gf2.hpp"

namespace softout {

/// Bipartite Tanner graph in CSR form.
struct TannerGraph {
  int n_vars = 0;
  int n_checks = 0;
  std::vector<int> check_offset;  ///< size n_checks+1
  std::vector<int> check_vars;    ///< variable indices per check
  std::vector<int> var_offset;    ///< size n_vars+1
  std::vector<int> var_checks;    ///< check indices per variable

  static TannerGraph from_matrix(const BitMatrix& h);
  std::vector<bool> apply(const std::vector<bool>& e) const;  ///< He over GF(2)
};

/// Spacetime Tanner graph: T copies of H's checks; check (t, c) touches
/// the round-t data variables per H plus measurement variables (t, c) and
/// (t-1, c). The final round is noiseless, so it has no measurement
/// variable of its own. Data variable (t, q) has index t*n+q; measurement
/// variable (t, c) has index T*n + t*r + c, t < T-1.
TannerGraph spacetime_tanner(const BitMatrix& h, int rounds);

struct BpResult {
  std::vector<bool> error;
  bool converged = false;
  int iterations = 0;
  std::vector<double> marginals;
};

/// Flooding-schedule sum-product decoding. priors are per-variable LLRs,
/// positive = no error; messages are clamped to +-30. Returns as soon as
/// the hard decision reproduces the syndrome (checked before the first
/// iteration as well), else after max_iter iterations.
BpResult bp_decode(const TannerGraph& tanner, const std::vector<bool>& syndrome,
                   const std::vector<double>& priors, int max_iter = 64);

}  // namespace softout
