#include "softout/bp.hpp"

#include <cmath>
#include <stdexcept>

namespace softout {

namespace {
constexpr double kClamp = 30.0;

double clamp_llr(double x) {
  if (x > kClamp) return kClamp;
  if (x < -kClamp) return -kClamp;
  return x;
}
}  // namespace

TannerGraph TannerGraph::from_matrix(const BitMatrix& h) {
  TannerGraph t;
  t.n_checks = static_cast<int>(h.rows());
  t.n_vars = static_cast<int>(h.cols());
  t.check_offset.push_back(0);
  for (int c = 0; c < t.n_checks; ++c) {
    for (int v = 0; v < t.n_vars; ++v)
      if (h.get(c, v)) t.check_vars.push_back(v);
    t.check_offset.push_back(static_cast<int>(t.check_vars.size()));
  }
  // Transpose adjacency.
  t.var_offset.assign(t.n_vars + 1, 0);
  for (int v : t.check_vars) ++t.var_offset[v + 1];
  for (int v = 0; v < t.n_vars; ++v) t.var_offset[v + 1] += t.var_offset[v];
  t.var_checks.resize(t.check_vars.size());
  std::vector<int> cursor(t.var_offset.begin(), t.var_offset.end() - 1);
  for (int c = 0; c < t.n_checks; ++c)
    for (int i = t.check_offset[c]; i < t.check_offset[c + 1]; ++i)
      t.var_checks[cursor[t.check_vars[i]]++] = c;
  return t;
}

std::vector<bool> TannerGraph::apply(const std::vector<bool>& e) const {
  if (static_cast<int>(e.size()) != n_vars)
    throw std::invalid_argument("tanner: vector length mismatch");
  std::vector<bool> s(n_checks, false);
  for (int c = 0; c < n_checks; ++c) {
    bool acc = false;
    for (int i = check_offset[c]; i < check_offset[c + 1]; ++i) acc = acc != e[check_vars[i]];
    s[c] = acc;
  }
  return s;
}

TannerGraph spacetime_tanner(const BitMatrix& h, int rounds) {
  if (rounds < 1) throw std::invalid_argument("spacetime tanner: rounds must be >= 1");
  const int r = static_cast<int>(h.rows());
  const int n = static_cast<int>(h.cols());
  const int T = rounds;

  TannerGraph t;
  t.n_checks = T * r;
  t.n_vars = T * n + (T - 1) * r;
  t.check_offset.push_back(0);
  auto meas_var = [&](int tt, int c) { return T * n + tt * r + c; };
  for (int tt = 0; tt < T; ++tt) {
    for (int c = 0; c < r; ++c) {
      for (int q = 0; q < n; ++q)
        if (h.get(c, q)) t.check_vars.push_back(tt * n + q);
      if (tt < T - 1) t.check_vars.push_back(meas_var(tt, c));
      if (tt > 0) t.check_vars.push_back(meas_var(tt - 1, c));
      t.check_offset.push_back(static_cast<int>(t.check_vars.size()));
    }
  }
  t.var_offset.assign(t.n_vars + 1, 0);
  for (int v : t.check_vars) ++t.var_offset[v + 1];
  for (int v = 0; v < t.n_vars; ++v) t.var_offset[v + 1] += t.var_offset[v];
  t.var_checks.resize(t.check_vars.size());
  std::vector<int> cursor(t.var_offset.begin(), t.var_offset.end() - 1);
  for (int c = 0; c < t.n_checks; ++c)
    for (int i = t.check_offset[c]; i < t.check_offset[c + 1]; ++i)
      t.var_checks[cursor[t.check_vars[i]]++] = c;
  return t;
}

BpResult bp_decode(const TannerGraph& tanner, const std::vector<bool>& syndrome,
                   const std::vector<double>& priors, int max_iter) {
  if (static_cast<int>(syndrome.size()) != tanner.n_checks)
    throw std::invalid_argument("bp: syndrome length mismatch");
  if (static_cast<int>(priors.size()) != tanner.n_vars)
    throw std::invalid_argument("bp: prior length mismatch");

  const int n_edges = static_cast<int>(tanner.check_vars.size());
  // Messages indexed by the check-side CSR edge position; the variable-side
  // position of the same edge is precomputed once.
  std::vector<int> var_edge(n_edges);
  {
    std::vector<int> cursor(tanner.var_offset.begin(), tanner.var_offset.end() - 1);
    for (int c = 0; c < tanner.n_checks; ++c)
      for (int i = tanner.check_offset[c]; i < tanner.check_offset[c + 1]; ++i)
        var_edge[i] = cursor[tanner.check_vars[i]]++;
  }

  std::vector<double> v2c(n_edges), c2v(n_edges, 0.0);
  std::vector<double> marginal(tanner.n_vars);
  BpResult res;
  res.error.assign(tanner.n_vars, false);

  auto hard_decision = [&]() {
    for (int v = 0; v < tanner.n_vars; ++v) res.error[v] = marginal[v] < 0;
    return tanner.apply(res.error) == syndrome;
  };

  for (int v = 0; v < tanner.n_vars; ++v) marginal[v] = priors[v];
  if (hard_decision()) {
    res.converged = true;
    res.marginals = std::move(marginal);
    return res;
  }
  for (int c = 0; c < tanner.n_checks; ++c)
    for (int i = tanner.check_offset[c]; i < tanner.check_offset[c + 1]; ++i)
      v2c[i] = clamp_llr(priors[tanner.check_vars[i]]);

  std::vector<double> prefix, suffix;
  for (int iter = 1; iter <= max_iter; ++iter) {
    // Check update: (-1)^s * 2 atanh(prod tanh(m/2)) over the other variables.
    for (int c = 0; c < tanner.n_checks; ++c) {
      int lo = tanner.check_offset[c], hi = tanner.check_offset[c + 1];
      int deg = hi - lo;
      prefix.assign(deg + 1, 1.0);
      suffix.assign(deg + 1, 1.0);
      for (int i = 0; i < deg; ++i) prefix[i + 1] = prefix[i] * std::tanh(v2c[lo + i] / 2);
      for (int i = deg - 1; i >= 0; --i) suffix[i] = suffix[i + 1] * std::tanh(v2c[lo + i] / 2);
      double sign = syndrome[c] ? -1.0 : 1.0;
      for (int i = 0; i < deg; ++i) {
        double prod = prefix[i] * suffix[i + 1];
        c2v[lo + i] = clamp_llr(sign * 2 * std::atanh(prod));
      }
    }
    // Variable update and marginals.
    std::vector<double> sum(tanner.n_vars, 0.0);
    for (int c = 0; c < tanner.n_checks; ++c)
      for (int i = tanner.check_offset[c]; i < tanner.check_offset[c + 1]; ++i)
        sum[tanner.check_vars[i]] += c2v[i];
    for (int v = 0; v < tanner.n_vars; ++v) marginal[v] = clamp_llr(priors[v] + sum[v]);
    for (int c = 0; c < tanner.n_checks; ++c)
      for (int i = tanner.check_offset[c]; i < tanner.check_offset[c + 1]; ++i) {
        int v = tanner.check_vars[i];
        v2c[i] = clamp_llr(priors[v] + sum[v] - c2v[i]);
      }
    res.iterations = iter;
    if (hard_decision()) {
      res.converged = true;
      break;
    }
  }
  res.marginals = std::move(marginal);
  return res;
}

}  // namespace softout
