#pragma once

#include <utility>
#include <vector>

namespace softout {

/// Postselection bound parameters: V circuit locations protected by length-n
/// repetition blocks at flip rate p, relative cutoff delta, TVD target
/// epsilon, N desired accepted samples.
struct PostselectParams {
  double gate_count = 1;  ///< V
  int block_length = 1;   ///< n
  double flip_rate = 0;   ///< p
  double delta = 0;
  double epsilon = 0;
  double samples = 1;  ///< N
};

struct PostselectBounds {
  double expected_m_upper;  ///< bound on E[number of executions]
  double epsilon_upper;     ///< bound on accepted-sample TVD
  double discard_upper;     ///< per-execution discard probability bound
};

struct BlockDesign {
  int block_length;  ///< n
  double delta;
};

struct RepJointRow {
  int flips;          ///< |E|
  double phi;         ///< (n - 2 min(|E|, n-|E|)) w
  double prob;        ///< Pr[|E| flips]
  double prob_fail;   ///< Pr[|E| flips and decoder failure]
};

struct CutoffAnalysis {
  double discard_fraction;
  double failure_rate;  ///< among surviving samples
  double ci_low, ci_high;  ///< Clopper-Pearson 95%
  long survivors;
  long surviving_failures;
};

struct HoeffdingBounds {
  double joint;      ///< Pr[accept and failure] <= exp(-(n/2)(1+delta-2p)^2)
  double rejection;  ///< Pr[reject] <= exp(-2 n c^2), c = (1-delta)/2 - p
};

/// Bernoulli KL divergence D(a||b) in nats, 0 log 0 = 0. Requires b in (0,1).
double kl_bernoulli(double a, double b);

/// Two-sided Clopper-Pearson interval at the given confidence (default 95%).
std::pair<double, double> clopper_pearson(long successes, long trials,
                                          double confidence = 0.95);

/// E[M] <= N / (1 - V exp[-n D((1-delta)/2 || p)]) and
/// eps <= V exp[-n D((1+delta)/2 || p)] / (1 - exp[-n D((1-delta)/2 || p)]).
/// Throws if the discard bound reaches 1 (outside the valid regime).
PostselectBounds postselect_bounds(const PostselectParams& params);

/// n = max(2 ln 2V / (1-2p)^2, (sqrt(ln 2V/eps) + sqrt(ln 2V))^2 / (2(1-2p)^2))
/// rounded up; delta = 1 - 2p - sqrt(2 ln 2V / n).
BlockDesign design_block_length(double gate_count, double flip_rate, double epsilon);

/// Minimal block length without postselection: ceil(2 ln(V/eps) / (1-2p)^2).
int no_postselection_length(double gate_count, double flip_rate, double epsilon);

/// Exact joint distribution of (phi, failure) for the length-n repetition
/// code under iid flips: |E| ~ Binomial(n, p), phi = (n - 2 min(|E|, n-|E|))w,
/// failure iff |E| >= n/2 (majority-vote ties count as failures). n <= 64.
std::vector<RepJointRow> rep_exact_joint(int n, double p);

/// Discard fraction at phi <= cutoff and the conditional failure rate among
/// survivors with a 95% Clopper-Pearson interval. Throws if nothing survives.
CutoffAnalysis cutoff_analysis(const std::vector<std::pair<double, bool>>& samples,
                               double cutoff);

HoeffdingBounds hoeffding_joint(int n, double p, double delta);

/// Per-round independence gives
/// p_L(T_mem) = (1 - (1 - 2 p_L(T))^{T_mem/T}) / 2, then 1-(1-p_L)^k over
/// k blocks.
double extrapolate(double p_l_at_t, double rounds, double target_rounds, double blocks);

/// Least-squares power-law fit y = c x^alpha on log-log points; returns
/// (c, alpha). Requires positive data.
std::pair<double, double> power_law_fit(const std::vector<double>& x,
                                        const std::vector<double>& y);

}  // namespace softout
