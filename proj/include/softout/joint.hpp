#pragma once

#include <random>
#include <string>
#include <vector>

#include "softout/bp.hpp"
#include "softout/codes.hpp"

namespace softout {

/// Empirical joint distribution of (phi, inner failure), binned at a fixed
/// width (the growth quantum w/2 by default). Bin i covers phi values
/// rounding to i * width.
class JointDistribution {
 public:
  JointDistribution(double bin_width) : width_(bin_width) {}

  void add(double phi, bool failure);
  int bin_of(double phi) const { return static_cast<int>(phi / width_ + 0.5); }

  long total() const { return total_; }
  long failures() const { return failures_; }
  double marginal_failure_rate() const;

  /// Laplace-smoothed conditional failure probability of the bin holding
  /// phi, (f + 0.5) / (c + 1); out-of-support phi clamps to the nearest
  /// populated bin.
  double conditional_failure(double phi) const;
  /// ln((1-pf)/pf) of the conditional above.
  double conditional_llr(double phi) const;

  /// Draw a (phi, failure) pair with the empirical probabilities.
  std::pair<double, bool> sample(std::mt19937_64& rng) const;

  double bin_width() const { return width_; }
  const std::vector<long>& counts() const { return counts_; }
  const std::vector<long>& failure_counts() const { return fail_; }

  std::string to_json() const;
  static JointDistribution from_json(const std::string& text);

 private:
  double width_;
  std::vector<long> counts_, fail_;
  long total_ = 0, failures_ = 0;
};

JointDistribution build_joint(const std::vector<std::pair<double, bool>>& samples,
                              double bin_width);

struct HierarchicalOptions {
  int rounds = 100;
  bool soft_priors = true;  ///< false: every prior is the marginal rate
  int max_iter = 64;
};

/// One outer-code trial: every outer qubit per round and every intermediate
/// measurement draws (phi, flip) from Phi; BP decodes the difference
/// syndrome history with per-variable priors from Phi; failure iff the
/// residual error anticommutes with a Z logical.
bool hierarchical_trial(const JointDistribution& phi_dist, const CssCode& outer,
                        const TannerGraph& tanner, const HierarchicalOptions& opt,
                        std::mt19937_64& rng);

}  // namespace softout
