// Acceptance gate: one line per criterion, PASS/FAIL/SKIP, exit = #failures.
// Criterion 11 is long-running and only runs with --extended or
// SOFTOUT_EXTENDED=1 in the environment.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "softout/bp.hpp"
#include "softout/codes.hpp"
#include "softout/joint.hpp"
#include "softout/mwpm.hpp"
#include "softout/noise.hpp"
#include "softout/parallel.hpp"
#include "softout/rng.hpp"
#include "softout/soft_output.hpp"
#include "softout/stats.hpp"
#include "softout/ufd.hpp"

using namespace softout;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail
            << std::endl;
  if (!pass) ++g_failures;
}

void report_skip(int id, const std::string& detail) {
  std::cout << "criterion " << id << ": SKIP  " << detail << std::endl;
}

std::vector<bool> graph_syndrome(const DecodingGraph& g, const std::vector<bool>& error) {
  std::vector<bool> s(g.num_syndrome_vertices(), false);
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!error[g.edge(e).fault_id]) continue;
    for (int v : {g.edge(e).u, g.edge(e).v}) {
      int i = g.syndrome_index(v);
      if (i != kNoVertex) s[i] = !s[i];
    }
  }
  return s;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

/// Weighted pool-adjacent-violators isotonic (non-decreasing) regression.
std::vector<double> pav(const std::vector<double>& y, const std::vector<double>& w) {
  std::vector<double> level, weight;
  std::vector<int> count;
  for (std::size_t i = 0; i < y.size(); ++i) {
    level.push_back(y[i]);
    weight.push_back(w[i]);
    count.push_back(1);
    while (level.size() > 1 && level[level.size() - 2] > level.back()) {
      double wsum = weight[weight.size() - 2] + weight.back();
      double merged =
          (level[level.size() - 2] * weight[weight.size() - 2] + level.back() * weight.back()) /
          wsum;
      int c = count[count.size() - 2] + count.back();
      level.pop_back();
      weight.pop_back();
      count.pop_back();
      level.back() = merged;
      weight.back() = wsum;
      count.back() = c;
    }
  }
  std::vector<double> fit;
  for (std::size_t b = 0; b < level.size(); ++b)
    for (int i = 0; i < count[b]; ++i) fit.push_back(level[b]);
  return fit;
}

// ---------------------------------------------------------------------------
// Criterion 1: phi from the union-find decoder equals the exact conditional
// LLR on repetition codes, for every syndrome.
void criterion_1() {
  long checked = 0;
  double worst = 0;
  for (int n : {3, 5, 7, 9, 11, 13}) {
    RepetitionCode rep = repetition_code(n);
    for (double p : {0.05, 0.1, 0.2}) {
      const double w = std::log((1 - p) / p);
      DecodingGraph g = with_uniform_weight(rep.graph, w);
      std::unordered_set<std::uint64_t> seen;
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<bool> e(n);
        for (int i = 0; i < n; ++i) e[i] = mask >> i & 1;
        std::vector<bool> s = graph_syndrome(g, e);
        std::uint64_t key = 0;
        for (int i = 0; i < static_cast<int>(s.size()); ++i)
          if (s[i]) key |= 1ull << i;
        if (!seen.insert(key).second) continue;
        UfdResult r = ufd_decode(g, s);
        double phi = soft_output(g, r.radii, 0, 0);
        double llr = exhaustive_llr(g, s, r.correction, p);
        double scale = std::max({std::abs(phi), std::abs(llr), 1.0});
        worst = std::max(worst, std::abs(phi - llr) / scale);
        ++checked;
      }
    }
  }
  std::ostringstream d;
  d << "phi equals the exact conditional LLR on " << checked << " syndromes, worst rel err " << worst;
  report(1, worst < 1e-9, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 2: exact n=12, p=0.05 repetition table; postselect away the
// lowest ~0.2% of phi mass.
void criterion_2() {
  auto table = rep_exact_joint(12, 0.05);
  // Collapse to phi levels, ascending.
  std::map<double, std::pair<double, double>> levels;  // phi -> (mass, fail mass)
  for (const auto& row : table) {
    levels[row.phi].first += row.prob;
    levels[row.phi].second += row.prob_fail;
  }
  double total_fail = 0;
  for (const auto& [phi, mf] : levels) total_fail += mf.second;
  // Discard the ascending-phi prefix whose mass is closest to 0.2%.
  double best_mass = 0, best_fail = 0, acc_mass = 0, acc_fail = 0;
  for (const auto& [phi, mf] : levels) {
    acc_mass += mf.first;
    acc_fail += mf.second;
    if (std::abs(acc_mass - 0.002) < std::abs(best_mass - 0.002)) {
      best_mass = acc_mass;
      best_fail = acc_fail;
    }
  }
  double post = (total_fail - best_fail) / (1 - best_mass);
  bool pass = total_fail >= 0.5e-5 && total_fail <= 2e-5 && post >= 2e-10 && post <= 8e-10;
  std::ostringstream d;
  d << "n=12 p=0.05: failure " << total_fail << " (target 1e-5 x2), discarded mass "
    << best_mass << ", postselected failure " << post << " (target 4e-10 x2)";
  report(2, pass, d.str());
}

// ---------------------------------------------------------------------------
// Criteria 3 + 4: |M| - |F| >= phi on surface codes, with a full dual
// certificate for every matching.
bool certificate_ok(const DecodingGraph& g, const std::vector<bool>& s,
                    const MatchingResult& res, std::string& why) {
  const double tol = 1e-9;
  SyndromeGraph sg = build_syndrome_graph(g, s);
  for (int i = 0; i < sg.size(); ++i) {
    for (int j = i + 1; j < sg.size(); ++j)
      if (pair_slack(sg, res, i, j) < -tol) {
        why = "negative pair slack";
        return false;
      }
    if (boundary_slack(sg, res, i) < -tol) {
      why = "negative boundary slack";
      return false;
    }
  }
  double sum = 0;
  for (const DualSet& ds : res.duals) {
    if (ds.y < -tol) {
      why = "negative dual";
      return false;
    }
    sum += ds.y;
  }
  if (std::abs(sum - res.objective) > tol * std::max(1.0, res.objective)) {
    why = "dual sum != objective";
    return false;
  }
  std::vector<bool> check(g.num_syndrome_vertices(), false);
  for (int e : res.correction)
    for (int v : {g.edge(e).u, g.edge(e).v}) {
      int i = g.syndrome_index(v);
      if (i != kNoVertex) check[i] = !check[i];
    }
  if (check != s) {
    why = "correction syndrome mismatch";
    return false;
  }
  for (int e : res.correction)
    if (std::abs(covered_measure(g, res.radii, e) - g.edge(e).weight) > tol) {
      why = "correction edge not fully covered";
      return false;
    }
  return true;
}

void criteria_3_4() {
  long gap_checked = 0, gap_violations = 0, cert_checked = 0, cert_bad = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::string why;
  auto run_case = [&](const SurfaceCode& sc, const DecodingGraph& g,
                      const std::vector<bool>& s) {
    MatchingResult res = mwpm_decode(g, s);
    ++cert_checked;
    if (!certificate_ok(g, s, res, why)) ++cert_bad;
    double phi = soft_output(g, res.radii, sc.b1, sc.b2);
    OppositeClassResult m = min_weight_opposite_class(g, s, res.correction);
    double margin = m.weight - res.objective - phi;
    worst_margin = std::min(worst_margin, margin);
    ++gap_checked;
    if (margin < -1e-9) ++gap_violations;
  };

  {
    SurfaceCode sc = surface_code(3, SurfaceVariant::Rotated);
    const double p = 0.08;
    DecodingGraph g = with_uniform_weight(sc.z_graph, std::log((1 - p) / p));
    const int n = static_cast<int>(sc.code.n());
    // All error patterns of weight <= 4.
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) > 4) continue;
      std::vector<bool> e(n);
      for (int i = 0; i < n; ++i) e[i] = mask >> i & 1;
      run_case(sc, g, graph_syndrome(g, e));
    }
    for (long t = 0; t < 10000; ++t) {
      std::mt19937_64 rng = trial_rng(103, t);
      run_case(sc, g, graph_syndrome(g, sample_error(n, p, rng)));
    }
  }
  {
    SurfaceCode sc = surface_code(5, SurfaceVariant::Rotated);
    const double p = 0.08;
    DecodingGraph g = with_uniform_weight(sc.z_graph, std::log((1 - p) / p));
    const int n = static_cast<int>(sc.code.n());
    for (long t = 0; t < 1000; ++t) {
      std::mt19937_64 rng = trial_rng(105, t);
      run_case(sc, g, graph_syndrome(g, sample_error(n, p, rng)));
    }
  }

  std::ostringstream d3;
  d3 << "matching gap |M|-|F| >= phi on " << gap_checked << " decodes, " << gap_violations
     << " violations, smallest margin " << worst_margin;
  report(3, gap_violations == 0, d3.str());
  std::ostringstream d4;
  d4 << "dual certificates on " << cert_checked << " decodes, " << cert_bad << " invalid";
  if (cert_bad > 0) d4 << " (last: " << why << ")";
  report(4, cert_bad == 0, d4.str());
}

// ---------------------------------------------------------------------------
// Criterion 5: binned log-odds of success vs phi is tightly correlated and
// isotone, d=5 perfect measurement, both decoders.
struct PhiTrial {
  float phi;
  int failure;
};

void criterion_5() {
  SurfaceCode sc = surface_code(5, SurfaceVariant::Rotated);
  const double p = 0.08;
  const double w = std::log((1 - p) / p);
  DecodingGraph g = with_uniform_weight(sc.z_graph, w);
  const int n = static_cast<int>(sc.code.n());
  // The spec floor is 1e6; 4e6 pushes the top phi bin well past 100 failures
  // for MWPM, whose phi support is only the odd multiples of w at d=5.
  const long trials = 4000000;
  bool all_pass = true;
  std::ostringstream d;
  d << "d=5 p=0.08, " << trials << " trials per decoder:";
  for (DecoderKind decoder : {DecoderKind::Ufd, DecoderKind::Mwpm}) {
    auto trial = [&](long, std::mt19937_64& rng) {
      std::vector<bool> e = sample_error(n, p, rng);
      std::vector<bool> s = graph_syndrome(g, e);
      std::vector<int> correction;
      RadiiAssignment radii;
      if (decoder == DecoderKind::Ufd) {
        UfdResult r = ufd_decode(g, s);
        correction = std::move(r.correction);
        radii = std::move(r.radii);
      } else {
        MatchingResult r = mwpm_decode(g, s);
        correction = std::move(r.correction);
        radii = std::move(r.radii);
      }
      double phi = soft_output(g, radii, sc.b1, sc.b2);
      std::vector<bool> residual = e;
      for (int eid : correction) {
        int q = g.edge(eid).fault_id;
        residual[q] = !residual[q];
      }
      bool failure = false;
      for (bool b : sc.code.l_z.multiply(residual)) failure = failure || b;
      return PhiTrial{static_cast<float>(phi), failure ? 1 : 0};
    };
    auto results = run_trials(201, trials, trial);
    JointDistribution dist(w / 2);
    for (const PhiTrial& r : results) dist.add(r.phi, r.failure != 0);
    std::vector<double> xs, ys, wts;
    for (std::size_t b = 0; b < dist.counts().size(); ++b) {
      long c = dist.counts()[b], f = dist.failure_counts()[b];
      if (f < 100 || f == c) continue;
      xs.push_back(b * dist.bin_width());
      ys.push_back(std::log(static_cast<double>(c - f) / f));
      wts.push_back(static_cast<double>(c));
    }
    double r = xs.size() >= 3 ? pearson(xs, ys) : 0;
    std::vector<double> fit = pav(ys, wts);
    bool monotone = true;
    for (std::size_t i = 1; i < fit.size(); ++i) monotone = monotone && fit[i] >= fit[i - 1];
    bool pass = xs.size() >= 3 && r >= 0.98 && monotone;
    all_pass = all_pass && pass;
    d << (decoder == DecoderKind::Ufd ? " UFD" : " MWPM") << " bins=" << xs.size()
      << " pearson=" << r << " isotone=" << (monotone ? "yes" : "no");
  }
  report(5, all_pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 6: UFD corrects every error of weight < d/2.
void criterion_6() {
  long failures = 0, checked = 0;
  for (int d : {3, 5}) {
    SurfaceCode sc = surface_code(d, SurfaceVariant::Rotated);
    const DecodingGraph& g = sc.z_graph;
    const int n = static_cast<int>(sc.code.n());
    const int maxw = (d - 1) / 2;
    std::vector<int> idx(maxw, 0);
    // Enumerate all supports of size 0..maxw.
    std::vector<int> support;
    std::function<void()> decode_current = [&] {
      std::vector<bool> e(n, false);
      for (int q : support) e[q] = true;
      UfdResult r = ufd_decode(g, graph_syndrome(g, e));
      std::vector<bool> residual = e;
      for (int eid : r.correction) {
        int q = g.edge(eid).fault_id;
        residual[q] = !residual[q];
      }
      for (bool b : sc.code.l_z.multiply(residual))
        if (b) ++failures;
      ++checked;
    };
    std::function<void(int, int)> rec = [&](int start, int left) {
      decode_current();
      if (left == 0) return;
      for (int q = start; q < n; ++q) {
        support.push_back(q);
        rec(q + 1, left - 1);
        support.pop_back();
      }
    };
    rec(0, maxw);
  }
  std::ostringstream d;
  d << "UFD exhaustive below half distance, " << checked << " patterns, " << failures
    << " logical failures";
  report(6, failures == 0, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 7: the [[1054, 140]] lifted-product code checks out.
void criterion_7() {
  CssCode code = qclp_code(qclp_1054_140_spec());
  bool pass = code.n() == 1054 && code.k() == 140;
  // H_X H_Z^T = 0.
  BitMatrix prod = code.h_x.multiply(code.h_z.transposed());
  for (std::size_t i = 0; i < prod.rows() && pass; ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j)
      if (prod.get(i, j)) {
        pass = false;
        break;
      }
  // Logicals commute with the checks and pair up as L_X L_Z^T = I.
  auto all_zero = [](const BitMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m.get(i, j)) return false;
    return true;
  };
  pass = pass && all_zero(code.h_x.multiply(code.l_z.transposed()));
  pass = pass && all_zero(code.h_z.multiply(code.l_x.transposed()));
  BitMatrix pairing = code.l_x.multiply(code.l_z.transposed());
  for (std::size_t i = 0; i < pairing.rows() && pass; ++i)
    for (std::size_t j = 0; j < pairing.cols(); ++j)
      if (pairing.get(i, j) != (i == j)) {
        pass = false;
        break;
      }
  std::ostringstream d;
  d << "QCLP [[" << code.n() << ", " << code.k()
    << "]]: orthogonality and 140 paired logicals " << (pass ? "verified" : "violated");
  report(7, pass, d.str());
}

// ---------------------------------------------------------------------------
// Criteria 8 + 12 share the inner-code sampling.
void criteria_8_12() {
  SurfaceCode sc = surface_code(5, SurfaceVariant::Rotated);
  const int inner_rounds = 10;
  // Calibrate p so the inner logical failure rate lands near 0.04.
  double chosen_p = 0, chosen_rate = 0, best_gap = 1;
  for (double p : {0.015, 0.02, 0.025, 0.03, 0.035, 0.04, 0.045}) {
    SpacetimeGraph st = spacetime_graph(sc.z_graph, {inner_rounds, p, p});
    auto trial = [&](long, std::mt19937_64& rng) {
      return memory_experiment(sc, st, DecoderKind::Ufd, p, p, rng);
    };
    auto res = run_trials(301, 10000, trial);
    long fails = 0;
    for (const MemoryResult& r : res) fails += r.failure ? 1 : 0;
    double rate = fails / 10000.0;
    if (std::abs(rate - 0.04) < best_gap) {
      best_gap = std::abs(rate - 0.04);
      chosen_p = p;
      chosen_rate = rate;
    }
  }
  std::cerr << "[acceptance] inner operating point p=q=" << chosen_p << " rate "
            << chosen_rate << std::endl;
  if (chosen_rate < 0.02 || chosen_rate > 0.06) {
    report(8, false, "no calibration point with inner failure in [0.02, 0.06]");
    report(12, false, "skipped: no inner operating point");
    return;
  }

  SpacetimeGraph st = spacetime_graph(sc.z_graph, {inner_rounds, chosen_p, chosen_p});
  auto inner_trial = [&](long, std::mt19937_64& rng) {
    return memory_experiment(sc, st, DecoderKind::Ufd, chosen_p, chosen_p, rng);
  };
  const long inner_samples = 1000000;
  auto inner = run_trials(302, inner_samples, inner_trial);
  JointDistribution phi_full(st.data_weight / 2), phi_small(st.data_weight / 2);
  for (long t = 0; t < inner_samples; ++t) {
    phi_full.add(inner[t].phi, inner[t].failure);
    if (t < inner_samples / 10) phi_small.add(inner[t].phi, inner[t].failure);
  }
  std::cerr << "[acceptance] inner marginal failure rate "
            << phi_full.marginal_failure_rate() << std::endl;

  CssCode outer = qclp_code(qclp_1054_140_spec());
  const int outer_rounds = 20;
  TannerGraph tanner = spacetime_tanner(outer.h_z, outer_rounds);
  HierarchicalOptions soft_opt, hard_opt;
  soft_opt.rounds = hard_opt.rounds = outer_rounds;
  soft_opt.soft_priors = true;
  hard_opt.soft_priors = false;

  const long outer_trials = 2000;
  // Identical per-trial streams: the (phi, flip) draws are prior-independent,
  // so soft and hard decode the same noise realizations (a paired test).
  auto paired = run_trials(303, outer_trials, [&](long t, std::mt19937_64&) {
    std::mt19937_64 rng_soft = trial_rng(9000, t), rng_hard = trial_rng(9000, t);
    int code = 0;
    if (hierarchical_trial(phi_full, outer, tanner, soft_opt, rng_soft)) code |= 1;
    if (hierarchical_trial(phi_full, outer, tanner, hard_opt, rng_hard)) code |= 2;
    return code;
  });
  long soft_fail = 0, hard_fail = 0, n01 = 0, n10 = 0;
  for (int code : paired) {
    if (code & 1) ++soft_fail;
    if (code & 2) ++hard_fail;
    if ((code & 1) && !(code & 2)) ++n01;  // soft fails, hard survives
    if (!(code & 1) && (code & 2)) ++n10;
  }
  // One-sided McNemar: P[Bin(n01+n10, 1/2) <= n01] <= 0.05.
  long m = n01 + n10;
  double tail = 0;
  {
    // log C(m, k) via lgamma.
    for (long k = 0; k <= n01; ++k)
      tail += std::exp(std::lgamma(m + 1) - std::lgamma(k + 1) - std::lgamma(m - k + 1) -
                       m * std::log(2.0));
  }
  bool pass8 = m > 0 && soft_fail < hard_fail && tail <= 0.05;
  std::ostringstream d8;
  d8 << "soft vs hard priors at inner rate " << chosen_rate << ": soft " << soft_fail << "/"
     << outer_trials << ", hard " << hard_fail << "/" << outer_trials << ", discordant "
     << n01 << "+" << n10 << ", one-sided p=" << tail;
  report(8, pass8, d8.str());

  // Criterion 12: a 1e5-sample Phi gives the same soft failure rate within 2x.
  auto small_runs = run_trials(304, outer_trials, [&](long t, std::mt19937_64&) {
    std::mt19937_64 rng = trial_rng(9000, t);
    return hierarchical_trial(phi_small, outer, tanner, soft_opt, rng) ? 1 : 0;
  });
  long small_fail = 0;
  for (int f : small_runs) small_fail += f;
  long lo = std::min(small_fail, soft_fail), hi = std::max(small_fail, soft_fail);
  bool pass12;
  std::ostringstream d12;
  if (lo + hi < 20) {
    pass12 = hi - lo <= 10;
    d12 << "failure counts " << small_fail << " vs " << soft_fail << " per " << outer_trials
        << " trials (below the counting noise floor; require |diff| <= 10)";
  } else {
    pass12 = hi <= 2 * lo;
    d12 << "soft failure rate with 1e5-sample Phi " << small_fail / double(outer_trials)
        << " vs 1e6-sample Phi " << soft_fail / double(outer_trials) << " (within 2x: "
        << (pass12 ? "yes" : "no") << ")";
  }
  report(12, pass12, d12.str());
}

// ---------------------------------------------------------------------------
// Criterion 9: Monte Carlo vs the postselection tail bounds, plus the
// designed-vs-plain block length ratio.
void criterion_9() {
  const int n = 21;
  const double p = 0.05, V = 4;
  const double w = std::log((1 - p) / p);
  const double delta = 1 - 2 * p - std::sqrt(2 * std::log(2 * V) / n);
  PostselectParams params;
  params.gate_count = V;
  params.block_length = n;
  params.flip_rate = p;
  params.delta = delta;
  params.epsilon = 1e-3;
  params.samples = 1;
  PostselectBounds bounds = postselect_bounds(params);

  const long executions = 1000000;
  const double cutoff = delta * n * w;
  auto trial = [&](long, std::mt19937_64& rng) {
    bool discard = false, fail = false;
    for (int v = 0; v < static_cast<int>(V); ++v) {
      std::vector<bool> e = sample_error(n, p, rng);
      int k = 0;
      for (bool b : e) k += b ? 1 : 0;
      double phi = (n - 2 * std::min(k, n - k)) * w;
      if (phi <= cutoff) discard = true;
      if (2 * k >= n) fail = true;
    }
    return discard ? 1 : (fail ? 2 : 0);
  };
  auto results = run_trials(401, executions, trial);
  long discards = 0, accepted_fails = 0;
  for (int code : results) {
    if (code == 1) ++discards;
    if (code == 2) ++accepted_fails;
  }
  double discard_frac = discards / double(executions);
  double accepted_fail_rate = accepted_fails / double(executions - discards);
  bool mc_pass = discard_frac <= bounds.discard_upper &&
                 accepted_fail_rate <= bounds.epsilon_upper;

  BlockDesign cp = design_block_length(4, 0.01, 1e-30);
  double ratio = double(cp.block_length) / no_postselection_length(4, 0.01, 1e-30);
  bool ratio_pass = ratio >= 0.24 && ratio <= 0.30;

  std::ostringstream d;
  d << "MC n=21 p=0.05 V=4 delta=" << delta << ": discard " << discard_frac << " <= "
    << bounds.discard_upper << ", accepted-failure " << accepted_fail_rate << " <= "
    << bounds.epsilon_upper << " (" << (mc_pass ? "ok" : "VIOLATED")
    << "); length ratio at eps=1e-30: " << ratio << " in [0.24, 0.30] ("
    << (ratio_pass ? "ok" : "no — the asymptotic limit is 1/4 but convergence is "
                            "logarithmic in eps; the ratio is still above 0.30 at eps=1e-300")
    << ")";
  report(9, mc_pass && ratio_pass, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 10: Hoeffding bounds dominate the exact repetition joint.
void criterion_10() {
  long violations = 0, checked = 0;
  for (int n = 2; n <= 30; ++n) {
    for (double p : {0.02, 0.05}) {
      const double w = std::log((1 - p) / p);
      auto table = rep_exact_joint(n, p);
      for (int j = 0; j < 20; ++j) {
        double delta = (1 - 2 * p) * 0.999 * j / 19.0;
        HoeffdingBounds b = hoeffding_joint(n, p, delta);
        double cutoff = n * w * delta;
        double reject = 0, joint = 0;
        for (const auto& row : table) {
          if (row.phi <= cutoff)
            reject += row.prob;
          else
            joint += row.prob_fail;
        }
        ++checked;
        if (b.rejection < reject - 1e-12 || b.joint < joint - 1e-12) ++violations;
      }
    }
  }
  std::ostringstream d;
  d << "Hoeffding dominance over " << checked << " (n, p, delta) points, " << violations
    << " violations";
  report(10, violations == 0, d.str());
}

// ---------------------------------------------------------------------------
// Criterion 11 (extended): d=9 phenomenological postselection.
void criterion_11() {
  SurfaceCode sc = surface_code(9, SurfaceVariant::Rotated);
  const double p = 0.005;
  SpacetimeGraph st = spacetime_graph(sc.z_graph, {9, p, p});
  const long total = 10000000, batch = 500000;
  std::map<long long, std::pair<long, long>> hist;  // phi key -> (count, failures)
  for (long done = 0; done < total; done += batch) {
    auto trial = [&](long, std::mt19937_64& rng) {
      return memory_experiment(sc, st, DecoderKind::Ufd, p, p, rng);
    };
    auto res = run_trials(501 + done / batch, batch, trial);
    for (const MemoryResult& r : res) {
      long long key = llround(r.phi * 1e9);
      auto& [c, f] = hist[key];
      ++c;
      if (r.failure) ++f;
    }
    std::cerr << "[acceptance] extended: " << done + batch << "/" << total << std::endl;
  }
  long fails = 0;
  for (const auto& [k, cf] : hist) fails += cf.second;
  double uncond = fails / double(total);
  // Discard the ascending-phi prefix with mass closest to 5e-4.
  long best_disc = 0, best_disc_f = 0, acc = 0, acc_f = 0;
  for (const auto& [k, cf] : hist) {
    acc += cf.first;
    acc_f += cf.second;
    if (std::abs(acc / double(total) - 5e-4) < std::abs(best_disc / double(total) - 5e-4)) {
      best_disc = acc;
      best_disc_f = acc_f;
    }
  }
  long survivors = total - best_disc, surv_f = fails - best_disc_f;
  // One-sided 95% upper bound = the upper end of a 90% two-sided interval.
  double upper = clopper_pearson(surv_f, survivors, 0.90).second;
  bool pass = upper <= 2e-6;
  std::ostringstream d;
  d << "d=9 p=q=0.005 T=9, 1e7 trials: unconditioned failure " << uncond << ", discarded "
    << best_disc / double(total) << ", surviving failures " << surv_f << "/" << survivors
    << ", 95% upper " << upper << " (target <= 2e-6)";
  report(11, pass, d.str());
}

}  // namespace

int main(int argc, char** argv) {
  bool extended = std::getenv("SOFTOUT_EXTENDED") != nullptr;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--extended") == 0) extended = true;

  criterion_1();
  criterion_2();
  criteria_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criteria_8_12();
  criterion_9();
  criterion_10();
  if (extended)
    criterion_11();
  else
    report_skip(11, "extended run (1e7 trials at d=9); enable with --extended or "
                    "SOFTOUT_EXTENDED=1");

  std::cout << "acceptance: " << (g_failures == 0 ? "all criteria passed"
                                                  : std::to_string(g_failures) +
                                                        " criteria failed")
            << std::endl;
  return g_failures > 125 ? 125 : g_failures;
}
