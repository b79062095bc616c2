#include "softout/joint.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace softout {

void JointDistribution::add(double phi, bool failure) {
  int b = bin_of(phi);
  if (b < 0) throw std::invalid_argument("joint: negative phi");
  if (b >= static_cast<int>(counts_.size())) {
    counts_.resize(b + 1, 0);
    fail_.resize(b + 1, 0);
  }
  ++counts_[b];
  ++total_;
  if (failure) {
    ++fail_[b];
    ++failures_;
  }
}

double JointDistribution::marginal_failure_rate() const {
  if (total_ == 0) throw std::logic_error("joint: empty distribution");
  return static_cast<double>(failures_) / static_cast<double>(total_);
}

double JointDistribution::conditional_failure(double phi) const {
  if (total_ == 0) throw std::logic_error("joint: empty distribution");
  int b = bin_of(phi);
  if (b < 0) b = 0;
  // Clamp to the nearest populated bin.
  if (b >= static_cast<int>(counts_.size()) || counts_[b] == 0) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(counts_.size()); ++i) {
      if (counts_[i] == 0) continue;
      if (best == -1 || std::abs(i - b) < std::abs(best - b)) best = i;
    }
    b = best;
  }
  return (fail_[b] + 0.5) / (counts_[b] + 1.0);
}

double JointDistribution::conditional_llr(double phi) const {
  double pf = conditional_failure(phi);
  return std::log((1 - pf) / pf);
}

std::pair<double, bool> JointDistribution::sample(std::mt19937_64& rng) const {
  if (total_ == 0) throw std::logic_error("joint: empty distribution");
  std::uniform_int_distribution<long> pick(0, total_ - 1);
  long idx = pick(rng);
  for (int b = 0; b < static_cast<int>(counts_.size()); ++b) {
    if (idx < counts_[b]) {
      bool failure = idx < fail_[b];
      return {b * width_, failure};
    }
    idx -= counts_[b];
  }
  throw std::logic_error("joint: sample out of range");
}

std::string JointDistribution::to_json() const {
  nlohmann::json j;
  j["bin_width"] = width_;
  j["counts"] = counts_;
  j["failures"] = fail_;
  return j.dump();
}

JointDistribution JointDistribution::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  JointDistribution d(j.at("bin_width").get<double>());
  auto counts = j.at("counts").get<std::vector<long>>();
  auto fails = j.at("failures").get<std::vector<long>>();
  if (counts.size() != fails.size()) throw std::invalid_argument("joint: malformed json");
  for (std::size_t b = 0; b < counts.size(); ++b) {
    if (fails[b] > counts[b]) throw std::invalid_argument("joint: malformed json");
    d.counts_.push_back(counts[b]);
    d.fail_.push_back(fails[b]);
    d.total_ += counts[b];
    d.failures_ += fails[b];
  }
  return d;
}

JointDistribution build_joint(const std::vector<std::pair<double, bool>>& samples,
                              double bin_width) {
  if (samples.empty()) throw std::invalid_argument("joint: no samples");
  JointDistribution d(bin_width);
  for (auto [phi, fail] : samples) d.add(phi, fail);
  return d;
}

bool hierarchical_trial(const JointDistribution& phi_dist, const CssCode& outer,
                        const TannerGraph& tanner, const HierarchicalOptions& opt,
                        std::mt19937_64& rng) {
  const int n = static_cast<int>(outer.n());
  const int r = static_cast<int>(outer.h_z.rows());
  const int T = opt.rounds;
  if (tanner.n_vars != T * n + (T - 1) * r || tanner.n_checks != T * r)
    throw std::invalid_argument("hierarchical: tanner graph does not match T");

  const double marginal_llr = [&] {
    double pf = phi_dist.marginal_failure_rate();
    pf = std::min(std::max(pf, 1e-12), 1 - 1e-12);
    return std::log((1 - pf) / pf);
  }();

  std::vector<double> priors(tanner.n_vars);
  std::vector<bool> error(n, false);
  std::vector<bool> prev_m(r, false);
  std::vector<bool> detectors(T * r, false);

  for (int t = 0; t < T; ++t) {
    for (int q = 0; q < n; ++q) {
      auto [phi, flip] = phi_dist.sample(rng);
      priors[t * n + q] = opt.soft_priors ? phi_dist.conditional_llr(phi) : marginal_llr;
      if (flip) error[q] = !error[q];
    }
    std::vector<bool> m = outer.h_z.multiply(error);
    if (t + 1 < T) {
      for (int c = 0; c < r; ++c) {
        auto [phi, flip] = phi_dist.sample(rng);
        priors[T * n + t * r + c] =
            opt.soft_priors ? phi_dist.conditional_llr(phi) : marginal_llr;
        if (flip) m[c] = !m[c];
      }
    }
    for (int c = 0; c < r; ++c) {
      detectors[t * r + c] = m[c] != prev_m[c];
      prev_m[c] = m[c];
    }
  }

  BpResult bp = bp_decode(tanner, detectors, priors, opt.max_iter);
  // Non-convergence is not fatal: the residual check decides.
  std::vector<bool> residual = error;
  for (int t = 0; t < T; ++t)
    for (int q = 0; q < n; ++q)
      if (bp.error[t * n + q]) residual[q] = !residual[q];
  std::vector<bool> logical = outer.l_z.multiply(residual);
  for (bool b : logical)
    if (b) return true;
  return false;
}

}  // namespace softout
