#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "softout/bp.hpp"
#include "softout/codes.hpp"
#include "softout/joint.hpp"
#include "softout/rng.hpp"

using namespace softout;

TEST_CASE("tanner from_matrix mirrors the matrix") {
  RepetitionCode rep = repetition_code(3);
  TannerGraph t = TannerGraph::from_matrix(rep.code.h_z);
  CHECK(t.n_checks == 3);
  CHECK(t.n_vars == 3);
  std::vector<bool> e{true, false, true};
  CHECK(t.apply(e) == rep.code.h_z.multiply(e));
}

TEST_CASE("trivial syndrome converges before iterating") {
  RepetitionCode rep = repetition_code(5);
  TannerGraph t = TannerGraph::from_matrix(rep.code.h_z);
  std::vector<double> priors(5, 2.0);
  BpResult r = bp_decode(t, std::vector<bool>(5, false), priors);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  for (bool b : r.error) CHECK_FALSE(b);
}

TEST_CASE("single flip on the repetition code") {
  RepetitionCode rep = repetition_code(3);
  TannerGraph t = TannerGraph::from_matrix(rep.code.h_z);
  std::vector<bool> e{false, true, false};
  std::vector<bool> s = rep.code.h_z.multiply(e);
  std::vector<double> priors(3, std::log(0.9 / 0.1));
  BpResult r = bp_decode(t, s, priors);
  CHECK(r.converged);
  CHECK(r.error == e);
}

TEST_CASE("clamped priors at the truth converge in one iteration") {
  SurfaceCode sc = surface_code(3, SurfaceVariant::Rotated);
  TannerGraph t = TannerGraph::from_matrix(sc.code.h_z);
  std::vector<bool> e(sc.code.n(), false);
  e[2] = e[7] = true;
  std::vector<bool> s = sc.code.h_z.multiply(e);
  std::vector<double> priors(sc.code.n(), 100.0);  // clamps to +30
  priors[2] = priors[7] = -100.0;
  BpResult r = bp_decode(t, s, priors);
  CHECK(r.converged);
  CHECK(r.iterations == 0);  // the prior hard decision already matches
  CHECK(r.error == e);
}

TEST_CASE("spacetime tanner structure") {
  // Single-check code: H = (1 1).
  BitMatrix h(1, 2);
  h.set(0, 0, true);
  h.set(0, 1, true);

  TannerGraph t1 = spacetime_tanner(h, 1);
  CHECK(t1.n_vars == 2);
  CHECK(t1.n_checks == 1);

  TannerGraph t2 = spacetime_tanner(h, 2);
  CHECK(t2.n_vars == 2 * 2 + 1);  // 4 data + 1 measurement
  CHECK(t2.n_checks == 2);
  // Check of round 0 touches data vars {0, 1} and meas var 4.
  std::vector<int> c0(t2.check_vars.begin() + t2.check_offset[0],
                      t2.check_vars.begin() + t2.check_offset[1]);
  CHECK(c0 == std::vector<int>{0, 1, 4});
  // Final round is perfect: its check touches its data vars plus meas var 4.
  std::vector<int> c1(t2.check_vars.begin() + t2.check_offset[1],
                      t2.check_vars.begin() + t2.check_offset[2]);
  CHECK(c1 == std::vector<int>{2, 3, 4});
}

TEST_CASE("spacetime tanner decodes a measurement error") {
  BitMatrix h(1, 2);
  h.set(0, 0, true);
  h.set(0, 1, true);
  TannerGraph t = spacetime_tanner(h, 3);
  // Measurement error in round 0 flips detectors of rounds 0 and 1.
  std::vector<bool> truth(t.n_vars, false);
  truth[3 * 2 + 0] = true;
  std::vector<bool> s = t.apply(truth);
  CHECK(s == std::vector<bool>{true, true, false});
  std::vector<double> priors(t.n_vars, std::log(0.95 / 0.05));
  BpResult r = bp_decode(t, s, priors);
  CHECK(r.converged);
  CHECK(r.error == truth);
}

TEST_CASE("qclp single data flip with strong priors") {
  CssCode code = qclp_code(qclp_1054_140_spec());
  TannerGraph t = TannerGraph::from_matrix(code.h_z);
  std::vector<bool> e(code.n(), false);
  e[123] = true;
  std::vector<bool> s = code.h_z.multiply(e);
  std::vector<double> priors(code.n(), std::log(0.99 / 0.01));
  BpResult r = bp_decode(t, s, priors);
  CHECK(r.converged);
  CHECK(t.apply(r.error) == s);
}

TEST_CASE("joint distribution binning and smoothing") {
  JointDistribution d(0.5);
  for (int i = 0; i < 1000; ++i) d.add(1.0, false);
  d.add(0.0, true);
  CHECK(d.total() == 1001);
  CHECK(d.failures() == 1);
  CHECK(d.bin_of(1.0) == 2);
  CHECK(d.bin_of(1.2) == 2);
  // Bin with 0 failures out of 1000: conditional = 0.5 / 1001.
  CHECK(d.conditional_failure(1.0) == doctest::Approx(0.5 / 1001));
  // All-failure bin.
  CHECK(d.conditional_failure(0.0) == doctest::Approx(1.5 / 2));
  // Out-of-support phi clamps to the nearest populated bin.
  CHECK(d.conditional_failure(50.0) == doctest::Approx(0.5 / 1001));
  CHECK(d.marginal_failure_rate() == doctest::Approx(1.0 / 1001));
  CHECK_THROWS(d.add(-1.0, false));
}

TEST_CASE("joint distribution sampling matches its histogram") {
  JointDistribution d(1.0);
  for (int i = 0; i < 300; ++i) d.add(2.0, i < 30);
  for (int i = 0; i < 700; ++i) d.add(5.0, false);
  std::mt19937_64 rng = trial_rng(40, 0);
  long low = 0, fails = 0;
  const long n = 100000;
  for (long i = 0; i < n; ++i) {
    auto [phi, fail] = d.sample(rng);
    low += phi < 3.0;
    fails += fail;
  }
  CHECK(std::abs(low - 0.3 * n) < 4 * std::sqrt(n * 0.3 * 0.7));
  CHECK(std::abs(fails - 0.03 * n) < 4 * std::sqrt(n * 0.03 * 0.97));
}

TEST_CASE("joint distribution json round trip") {
  JointDistribution d(0.25);
  d.add(0.5, true);
  d.add(1.0, false);
  d.add(1.0, false);
  JointDistribution back = JointDistribution::from_json(d.to_json());
  CHECK(back.bin_width() == d.bin_width());
  CHECK(back.counts() == d.counts());
  CHECK(back.failure_counts() == d.failure_counts());
}

TEST_CASE("hierarchical trial runs and is deterministic") {
  JointDistribution d(0.5);
  for (int i = 0; i < 1000; ++i) d.add(3.0, i < 40);
  RepetitionCode rep = repetition_code(3);
  HierarchicalOptions opt;
  opt.rounds = 4;
  TannerGraph t = spacetime_tanner(rep.code.h_z, opt.rounds);
  std::mt19937_64 a = trial_rng(41, 7), b = trial_rng(41, 7);
  bool ra = hierarchical_trial(d, rep.code, t, opt, a);
  bool rb = hierarchical_trial(d, rep.code, t, opt, b);
  CHECK(ra == rb);
}

TEST_CASE("concentrated success distribution yields near-zero failure") {
  JointDistribution d(0.5);
  for (int i = 0; i < 10000; ++i) d.add(20.0, false);
  RepetitionCode rep = repetition_code(3);
  HierarchicalOptions opt;
  opt.rounds = 3;
  TannerGraph t = spacetime_tanner(rep.code.h_z, opt.rounds);
  long failures = 0;
  for (long trial = 0; trial < 200; ++trial) {
    std::mt19937_64 rng = trial_rng(42, trial);
    failures += hierarchical_trial(d, rep.code, t, opt, rng);
  }
  CHECK(failures == 0);
}
