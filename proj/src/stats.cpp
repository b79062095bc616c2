#include "softout/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/distributions/beta.hpp>

namespace softout {

double kl_bernoulli(double a, double b) {
  if (!(a >= 0 && a <= 1)) throw std::invalid_argument("kl: a outside [0,1]");
  if (!(b > 0 && b < 1)) throw std::invalid_argument("kl: b outside (0,1)");
  double d = 0;
  if (a > 0) d += a * std::log(a / b);
  if (a < 1) d += (1 - a) * std::log((1 - a) / (1 - b));
  return d;
}

std::pair<double, double> clopper_pearson(long successes, long trials,
                                          double confidence) {
  if (trials <= 0 || successes < 0 || successes > trials)
    throw std::invalid_argument("clopper_pearson: bad counts");
  double alpha = 1 - confidence;
  double lo = 0, hi = 1;
  if (successes > 0) {
    boost::math::beta_distribution<double> b(successes, trials - successes + 1);
    lo = boost::math::quantile(b, alpha / 2);
  }
  if (successes < trials) {
    boost::math::beta_distribution<double> b(successes + 1, trials - successes);
    hi = boost::math::quantile(b, 1 - alpha / 2);
  }
  return {lo, hi};
}

PostselectBounds postselect_bounds(const PostselectParams& params) {
  const double v = params.gate_count;
  const int n = params.block_length;
  const double p = params.flip_rate;
  const double delta = params.delta;
  if (!(p > 0 && p < 0.5)) throw std::invalid_argument("postselect bounds: p outside (0, 1/2)");
  if (!(delta >= 0 && delta < 1 - 2 * p))
    throw std::invalid_argument("postselect bounds: delta outside [0, 1-2p)");
  // log-space: V exp(-n D) = exp(ln V - n D).
  double log_discard = std::log(v) - n * kl_bernoulli((1 - delta) / 2, p);
  double discard = std::exp(log_discard);
  if (!(discard < 1)) throw std::domain_error("postselect bounds: discard bound >= 1");
  double log_fail = std::log(v) - n * kl_bernoulli((1 + delta) / 2, p);
  double denom = 1 - std::exp(-n * kl_bernoulli((1 - delta) / 2, p));
  PostselectBounds b;
  b.discard_upper = discard;
  b.expected_m_upper = params.samples / (1 - discard);
  b.epsilon_upper = std::exp(log_fail) / denom;
  return b;
}

BlockDesign design_block_length(double gate_count, double flip_rate, double epsilon) {
  const double v = gate_count;
  const double p = flip_rate;
  if (!(v >= 1)) throw std::invalid_argument("block design: V < 1");
  if (!(p > 0 && p < 0.5)) throw std::invalid_argument("block design: p outside (0, 1/2)");
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("block design: eps outside (0,1)");
  double g = (1 - 2 * p) * (1 - 2 * p);
  double a = 2 * std::log(2 * v) / g;
  double s = std::sqrt(std::log(2 * v / epsilon)) + std::sqrt(std::log(2 * v));
  double b = s * s / (2 * g);
  int n = static_cast<int>(std::ceil(std::max(a, b)));
  double delta = 1 - 2 * p - std::sqrt(2 * std::log(2 * v) / n);
  BlockDesign out{n, delta};
  if (!(out.delta >= 0 && out.delta < 1 - 2 * p))
    throw std::logic_error("block design: delta fell outside its range");
  return out;
}

int no_postselection_length(double gate_count, double flip_rate, double epsilon) {
  double g = (1 - 2 * flip_rate) * (1 - 2 * flip_rate);
  return static_cast<int>(std::ceil(2 * std::log(gate_count / epsilon) / g));
}

std::vector<RepJointRow> rep_exact_joint(int n, double p) {
  if (n < 1 || n > 64) throw std::invalid_argument("rep_exact_joint: n outside [1,64]");
  if (!(p >= 0 && p < 0.5)) throw std::invalid_argument("rep_exact_joint: p outside [0, 1/2)");
  const double w = p > 0 ? std::log((1 - p) / p) : std::numeric_limits<double>::infinity();
  std::vector<RepJointRow> table;
  table.reserve(n + 1);
  long double coeff = 1;  // C(n, k), exact in the 64-bit mantissa for n <= 64
  for (int k = 0; k <= n; ++k) {
    long double mass = coeff * std::pow(static_cast<long double>(p), k) *
                       std::pow(static_cast<long double>(1 - p), n - k);
    RepJointRow row;
    row.flips = k;
    row.phi = (n - 2 * std::min(k, n - k)) * w;
    row.prob = static_cast<double>(mass);
    bool fail = 2 * k >= n;  // majority-vote failure; ties count as failures
    row.prob_fail = fail ? row.prob : 0.0;
    table.push_back(row);
    coeff = coeff * (n - k) / (k + 1);
  }
  if (p == 0) {
    // All mass at zero flips; phi = n*w is infinite in this degenerate case.
    table.resize(1);
    table[0].prob = 1.0;
    table[0].prob_fail = 0.0;
  }
  return table;
}

CutoffAnalysis cutoff_analysis(const std::vector<std::pair<double, bool>>& samples,
                               double cutoff) {
  if (samples.empty()) throw std::invalid_argument("cutoff: no samples");
  if (cutoff < 0) throw std::invalid_argument("cutoff: negative cutoff");
  long discarded = 0, survivors = 0, failures = 0;
  for (auto [phi, fail] : samples) {
    if (phi <= cutoff) {
      ++discarded;
    } else {
      ++survivors;
      if (fail) ++failures;
    }
  }
  if (survivors == 0) throw std::domain_error("cutoff: no surviving samples");
  CutoffAnalysis out;
  out.discard_fraction = static_cast<double>(discarded) / samples.size();
  out.failure_rate = static_cast<double>(failures) / survivors;
  auto [lo, hi] = clopper_pearson(failures, survivors);
  out.ci_low = lo;
  out.ci_high = hi;
  out.survivors = survivors;
  out.surviving_failures = failures;
  return out;
}

HoeffdingBounds hoeffding_joint(int n, double p, double delta) {
  if (!(p > 0 && p < 0.5)) throw std::invalid_argument("hoeffding: p outside (0, 1/2)");
  if (!(delta >= 0 && delta < 1 - 2 * p))
    throw std::invalid_argument("hoeffding: delta outside [0, 1-2p)");
  HoeffdingBounds b;
  double t = 1 + delta - 2 * p;
  b.joint = std::exp(-0.5 * n * t * t);
  double c = (1 - delta) / 2 - p;
  b.rejection = std::exp(-2.0 * n * c * c);
  return b;
}

double extrapolate(double p_l_at_t, double rounds, double target_rounds, double blocks) {
  if (!(p_l_at_t >= 0 && p_l_at_t <= 0.5))
    throw std::invalid_argument("extrapolate: p_L outside [0, 1/2]");
  if (!(rounds >= 1 && target_rounds >= rounds))
    throw std::invalid_argument("extrapolate: need 1 <= T <= T_mem");
  if (!(blocks >= 1)) throw std::invalid_argument("extrapolate: k < 1");
  double p_mem = (1 - std::pow(1 - 2 * p_l_at_t, target_rounds / rounds)) / 2;
  return 1 - std::pow(1 - p_mem, blocks);
}

std::pair<double, double> power_law_fit(const std::vector<double>& x,
                                        const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("power_law_fit: need >= 2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) throw std::invalid_argument("power_law_fit: nonpositive data");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double alpha = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double c = std::exp((sy - alpha * sx) / m);
  return {c, alpha};
}

}  // namespace softout
