#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "softout/codes.hpp"
#include "softout/joint.hpp"
#include "softout/mwpm.hpp"
#include "softout/noise.hpp"
#include "softout/parallel.hpp"
#include "softout/soft_output.hpp"
#include "softout/stats.hpp"
#include "softout/ufd.hpp"

using json = nlohmann::json;
using namespace softout;

namespace {

std::string git_hash() {
  FILE* pipe = popen("git rev-parse HEAD 2>/dev/null", "r");
  if (!pipe) return "unknown";
  char buf[64] = {0};
  std::string out;
  while (fgets(buf, sizeof(buf), pipe)) out += buf;
  pclose(pipe);
  while (!out.empty() && (out.back() == '\n' || out.back() == '\r')) out.pop_back();
  return out.empty() ? "unknown" : out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << content;
}

void write_manifest(const std::string& out, const json& config, double wall_s) {
  json m;
  m["config"] = config;
  m["git_hash"] = git_hash();
  m["wall_seconds"] = wall_s;
  write_file(out + ".manifest.json", m.dump(2) + "\n");
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

DecoderKind parse_decoder(const std::string& s) {
  if (s == "ufd") return DecoderKind::Ufd;
  if (s == "mwpm") return DecoderKind::Mwpm;
  throw CLI::ValidationError("decoder must be ufd or mwpm");
}

SurfaceVariant parse_variant(const std::string& s) {
  if (s == "rotated") return SurfaceVariant::Rotated;
  if (s == "planar") return SurfaceVariant::Planar;
  throw CLI::ValidationError("variant must be rotated or planar");
}

/// Single perfect-measurement round on the 2D graph.
MemoryResult perfect_round_trial(const SurfaceCode& sc, const DecodingGraph& graph,
                                 DecoderKind decoder, double p, std::mt19937_64& rng) {
  const int n = static_cast<int>(sc.code.n());
  std::vector<bool> e = sample_error(n, p, rng);
  std::vector<bool> m = syndrome(sc.code.h_z, e);
  std::vector<bool> det(graph.num_syndrome_vertices(), false);
  for (std::size_t i = 0; i < m.size(); ++i)
    det[graph.syndrome_index(static_cast<int>(i))] = m[i];

  std::vector<int> correction;
  RadiiAssignment radii;
  if (decoder == DecoderKind::Ufd) {
    UfdResult r = ufd_decode(graph, det);
    correction = std::move(r.correction);
    radii = std::move(r.radii);
  } else {
    MatchingResult r = mwpm_decode(graph, det);
    correction = std::move(r.correction);
    radii = std::move(r.radii);
  }
  double phi = soft_output(graph, radii, sc.b1, sc.b2);
  std::vector<bool> residual = e;
  for (int eid : correction) {
    int q = graph.edge(eid).fault_id;
    residual[q] = !residual[q];
  }
  std::vector<bool> logical = sc.code.l_z.multiply(residual);
  bool failure = false;
  for (bool b : logical) failure = failure || b;
  return {failure, phi};
}

std::string histogram_csv(const JointDistribution& dist) {
  std::ostringstream csv;
  csv << "bin,phi,count,failures\n";
  for (std::size_t b = 0; b < dist.counts().size(); ++b) {
    if (dist.counts()[b] == 0) continue;
    csv << b << "," << b * dist.bin_width() << "," << dist.counts()[b] << ","
        << dist.failure_counts()[b] << "\n";
  }
  return csv.str();
}

int cmd_phi_sweep(int d, const std::string& variant, double p, long trials,
                  const std::string& decoder, std::uint64_t seed, int threads,
                  const std::string& out) {
  Timer timer;
  SurfaceCode sc = surface_code(d, parse_variant(variant));
  const double w = std::log((1 - p) / p);
  DecodingGraph graph = with_uniform_weight(sc.z_graph, w);
  DecoderKind kind = parse_decoder(decoder);

  auto results = run_trials(
      seed, trials,
      [&](long, std::mt19937_64& rng) { return perfect_round_trial(sc, graph, kind, p, rng); },
      threads);

  JointDistribution dist(w / 2);
  for (const auto& r : results) dist.add(r.phi, r.failure);
  write_file(out + ".csv", histogram_csv(dist));
  json j;
  j["trials"] = trials;
  j["failure_rate"] = dist.marginal_failure_rate();
  j["distribution"] = json::parse(dist.to_json());
  write_file(out + ".json", j.dump(2) + "\n");
  json cfg{{"kind", "phi-sweep"}, {"d", d},         {"variant", variant},
           {"p", p},              {"trials", trials}, {"decoder", decoder},
           {"seed", seed},        {"threads", threads}};
  write_manifest(out, cfg, timer.seconds());
  std::cerr << "phi-sweep: failure rate " << dist.marginal_failure_rate() << "\n";
  return 0;
}

int cmd_rep_exact(int n, double p, double discard_mass, const std::string& out) {
  Timer timer;
  auto table = rep_exact_joint(n, p);
  std::ostringstream csv;
  csv << "flips,phi,prob,prob_fail\n";
  for (const auto& row : table)
    csv << row.flips << "," << row.phi << "," << row.prob << "," << row.prob_fail << "\n";
  write_file(out + ".csv", csv.str());

  // Cutoff discarding at most the requested mass fraction, scanning phi
  // levels from below.
  std::vector<std::pair<double, std::pair<double, double>>> by_phi;  // phi -> (mass, fail)
  for (const auto& row : table) {
    bool merged = false;
    for (auto& [phi, acc] : by_phi)
      if (phi == row.phi) {
        acc.first += row.prob;
        acc.second += row.prob_fail;
        merged = true;
      }
    if (!merged) by_phi.push_back({row.phi, {row.prob, row.prob_fail}});
  }
  std::sort(by_phi.begin(), by_phi.end());
  double total_fail = 0;
  for (const auto& row : table) total_fail += row.prob_fail;
  double discarded = 0, kept_fail = total_fail, kept = 1, cutoff = -1;
  for (const auto& [phi, acc] : by_phi) {
    if (discarded + acc.first > discard_mass) break;
    discarded += acc.first;
    kept -= acc.first;
    kept_fail -= acc.second;
    cutoff = phi;
  }
  json j;
  j["n"] = n;
  j["p"] = p;
  j["failure_rate"] = total_fail;
  j["cutoff_phi"] = cutoff;
  j["discarded_mass"] = discarded;
  j["postselected_failure_rate"] = kept > 0 ? kept_fail / kept : 0.0;
  write_file(out + ".json", j.dump(2) + "\n");
  json cfg{{"kind", "rep-exact"}, {"n", n}, {"p", p}, {"discard_mass", discard_mass}};
  write_manifest(out, cfg, timer.seconds());
  std::cerr << "rep-exact: " << total_fail << " -> " << j["postselected_failure_rate"]
            << " discarding " << discarded << "\n";
  return 0;
}

int cmd_hierarchical(int d, double p, double q, int inner_rounds, long samples,
                     int outer_rounds, long trials, const std::string& mode,
                     std::uint64_t seed, int threads, const std::string& out) {
  Timer timer;
  if (mode != "soft" && mode != "hard" && mode != "both")
    throw CLI::ValidationError("mode must be soft, hard, or both");
  SurfaceCode sc = surface_code(d, SurfaceVariant::Rotated);
  SpacetimeGraph st = spacetime_graph(sc.z_graph, {inner_rounds, p, q});
  std::cerr << "hierarchical: building phi distribution from " << samples << " samples\n";
  auto inner = run_trials(
      seed, samples,
      [&](long, std::mt19937_64& rng) {
        return memory_experiment(sc, st, DecoderKind::Ufd, p, q, rng);
      },
      threads);
  JointDistribution dist(st.data_weight / 2);
  for (const auto& r : inner) dist.add(r.phi, r.failure);
  std::cerr << "hierarchical: inner failure rate " << dist.marginal_failure_rate() << "\n";

  CssCode outer = qclp_code(qclp_1054_140_spec());
  TannerGraph tanner = spacetime_tanner(outer.h_z, outer_rounds);

  json j;
  j["inner_failure_rate"] = dist.marginal_failure_rate();
  j["trials"] = trials;
  std::ostringstream csv;
  csv << "mode,trials,failures,rate,ci_low,ci_high\n";
  for (const std::string& m : {std::string("soft"), std::string("hard")}) {
    if (mode != "both" && mode != m) continue;
    HierarchicalOptions opt;
    opt.rounds = outer_rounds;
    opt.soft_priors = (m == "soft");
    auto res = run_trials(
        seed + 1, trials,
        [&](long, std::mt19937_64& rng) {
          return hierarchical_trial(dist, outer, tanner, opt, rng) ? 1 : 0;
        },
        threads);
    long failures = 0;
    for (int f : res) failures += f;
    auto [lo, hi] = clopper_pearson(failures, trials);
    double rate = static_cast<double>(failures) / trials;
    j[m] = {{"failures", failures}, {"rate", rate}, {"ci_low", lo}, {"ci_high", hi}};
    csv << m << "," << trials << "," << failures << "," << rate << "," << lo << "," << hi
        << "\n";
    std::cerr << "hierarchical: " << m << " priors failure rate " << rate << "\n";
  }
  write_file(out + ".csv", csv.str());
  write_file(out + ".json", j.dump(2) + "\n");
  write_file(out + ".phi.json", dist.to_json() + "\n");
  json cfg{{"kind", "hierarchical"}, {"d", d},
           {"p", p},                 {"q", q},
           {"inner_rounds", inner_rounds}, {"samples", samples},
           {"outer_rounds", outer_rounds}, {"trials", trials},
           {"mode", mode},           {"seed", seed},
           {"threads", threads}};
  write_manifest(out, cfg, timer.seconds());
  return 0;
}

int cmd_postselect(int n, double p, double v, double eps, double delta_flag, long trials,
                   std::uint64_t seed, int threads, const std::string& out) {
  Timer timer;
  double delta = delta_flag;
  if (delta < 0) {
    // Designed delta for this V, p at the requested block length.
    delta = 1 - 2 * p - std::sqrt(2 * std::log(2 * v) / n);
    if (delta < 0) throw CLI::ValidationError("n too small for the designed delta");
  }
  const double w = std::log((1 - p) / p);
  const double cutoff = n * w * delta;
  auto res = run_trials(
      seed, trials,
      [&](long, std::mt19937_64& rng) {
        std::vector<bool> e = sample_error(n, p, rng);
        int k = 0;
        for (bool b : e) k += b;
        double phi = (n - 2 * std::min(k, n - k)) * w;
        int discard = phi <= cutoff ? 1 : 0;
        int fail = 2 * k >= n ? 1 : 0;
        return discard * 2 + fail;
      },
      threads);
  long discards = 0, accepted = 0, accepted_failures = 0;
  for (int r : res) {
    if (r & 2) {
      ++discards;
    } else {
      ++accepted;
      accepted_failures += r & 1;
    }
  }
  if (accepted == 0) throw std::runtime_error("postselect: every execution was discarded");

  PostselectParams params;
  params.gate_count = v;
  params.block_length = n;
  params.flip_rate = p;
  params.delta = delta;
  params.epsilon = eps;
  PostselectBounds bounds = postselect_bounds(params);
  auto [lo, hi] = clopper_pearson(accepted_failures, accepted);
  json j;
  j["delta"] = delta;
  j["cutoff_phi"] = cutoff;
  j["trials"] = trials;
  j["discard_fraction"] = static_cast<double>(discards) / trials;
  j["accepted_failure_rate"] = static_cast<double>(accepted_failures) / accepted;
  j["accepted_failure_ci"] = {lo, hi};
  j["discard_bound"] = bounds.discard_upper;
  j["epsilon_bound"] = bounds.epsilon_upper;
  j["expected_m_bound_per_sample"] = bounds.expected_m_upper;
  write_file(out + ".json", j.dump(2) + "\n");
  json cfg{{"kind", "postselect"}, {"n", n},     {"p", p},         {"V", v},
           {"eps", eps},           {"delta", delta_flag}, {"trials", trials},
           {"seed", seed},         {"threads", threads}};
  write_manifest(out, cfg, timer.seconds());
  std::cerr << "postselect: discard " << j["discard_fraction"] << " (bound "
            << bounds.discard_upper << "), accepted failure " << j["accepted_failure_rate"]
            << " (bound " << bounds.epsilon_upper << ")\n";
  return 0;
}

int cmd_bounds(double v, double p, double eps, const std::string& out) {
  Timer timer;
  BlockDesign cp = design_block_length(v, p, eps);
  PostselectParams params;
  params.gate_count = v;
  params.block_length = cp.block_length;
  params.flip_rate = p;
  params.delta = cp.delta;
  params.epsilon = eps;
  PostselectBounds b = postselect_bounds(params);
  json j;
  j["V"] = v;
  j["p"] = p;
  j["eps"] = eps;
  j["n"] = cp.block_length;
  j["delta"] = cp.delta;
  j["discard_bound"] = b.discard_upper;
  j["epsilon_bound"] = b.epsilon_upper;
  j["expected_m_bound_per_sample"] = b.expected_m_upper;
  j["no_postselection_n"] = no_postselection_length(v, p, eps);
  write_file(out + ".json", j.dump(2) + "\n");
  json cfg{{"kind", "bounds"}, {"V", v}, {"p", p}, {"eps", eps}};
  write_manifest(out, cfg, timer.seconds());
  std::cerr << "bounds: n=" << cp.block_length << " delta=" << cp.delta
            << " eps_bound=" << b.epsilon_upper << "\n";
  return 0;
}

int cmd_memory(int d, const std::string& variant, double p, double q, int rounds,
               double ratio, long trials, const std::string& decoder, std::uint64_t seed,
               int threads, const std::string& out) {
  Timer timer;
  SurfaceCode sc = surface_code(d, parse_variant(variant));
  int t_rounds = rounds;
  if (t_rounds <= 0) {
    if (ratio <= 0) throw CLI::ValidationError("give --rounds or a positive --ratio");
    double n_total = static_cast<double>(sc.code.n());
    t_rounds = static_cast<int>(std::ceil(3 * std::sqrt(n_total) * d / ratio));
  }
  SpacetimeGraph st = spacetime_graph(sc.z_graph, {t_rounds, p, q});
  DecoderKind kind = parse_decoder(decoder);
  auto res = run_trials(
      seed, trials,
      [&](long, std::mt19937_64& rng) { return memory_experiment(sc, st, kind, p, q, rng); },
      threads);
  JointDistribution dist(st.data_weight / 2);
  for (const auto& r : res) dist.add(r.phi, r.failure);
  auto [lo, hi] = clopper_pearson(dist.failures(), dist.total());
  write_file(out + ".csv", histogram_csv(dist));
  json j;
  j["rounds"] = t_rounds;
  j["trials"] = trials;
  j["failure_rate"] = dist.marginal_failure_rate();
  j["ci_low"] = lo;
  j["ci_high"] = hi;
  write_file(out + ".json", j.dump(2) + "\n");
  json cfg{{"kind", "memory"}, {"d", d},       {"variant", variant}, {"p", p},
           {"q", q},           {"rounds", rounds}, {"ratio", ratio},
           {"trials", trials}, {"decoder", decoder}, {"seed", seed},
           {"threads", threads}};
  write_manifest(out, cfg, timer.seconds());
  std::cerr << "memory: T=" << t_rounds << " failure rate " << dist.marginal_failure_rate()
            << "\n";
  return 0;
}

int cmd_qclp_info(int lift, const std::string& out) {
  Timer timer;
  QclpSpec spec = qclp_1054_140_spec();
  spec.lift = lift;
  CssCode code = qclp_code(spec);
  json j;
  j["lift"] = lift;
  j["n"] = code.n();
  j["k"] = code.k();
  j["hz_rows"] = code.h_z.rows();
  j["hx_rows"] = code.h_x.rows();
  std::vector<int> row_weights;
  for (std::size_t r = 0; r < code.h_z.rows(); ++r) {
    int wgt = 0;
    for (std::size_t c = 0; c < code.h_z.cols(); ++c) wgt += code.h_z.get(r, c);
    row_weights.push_back(wgt);
  }
  j["hz_row_weight_min"] = *std::min_element(row_weights.begin(), row_weights.end());
  j["hz_row_weight_max"] = *std::max_element(row_weights.begin(), row_weights.end());
  write_file(out + ".json", j.dump(2) + "\n");
  write_file(out + ".hz.alist", to_alist(code.h_z));
  write_file(out + ".hx.alist", to_alist(code.h_x));
  json cfg{{"kind", "qclp-info"}, {"lift", lift}};
  write_manifest(out, cfg, timer.seconds());
  std::cerr << "qclp: [[" << code.n() << ", " << code.k() << "]]\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soft-output decoding toolkit"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int threads = 0;
  std::string out = "softout_out";
  app.add_option("--seed", seed, "RNG seed")->required();
  app.add_option("--threads", threads, "worker threads (0 = library default)");
  app.add_option("--out", out, "output path prefix");

  int d = 3, n = 12, rounds = 0, inner_rounds = 10, outer_rounds = 20, lift = 31;
  double p = 0.05, q = -1, v = 4, eps = 1e-3, delta = -1, ratio = 0, discard_mass = 0.002;
  long trials = 1000, samples = 100000;
  std::string variant = "rotated", decoder = "ufd", mode = "both";

  auto* sweep = app.add_subcommand("phi-sweep", "soft-output histogram, perfect measurement");
  sweep->add_option("--d", d, "code distance");
  sweep->add_option("--variant", variant, "rotated|planar");
  sweep->add_option("--p", p, "physical error rate")->required();
  sweep->add_option("--trials", trials, "Monte Carlo trials");
  sweep->add_option("--decoder", decoder, "ufd|mwpm");

  auto* rep = app.add_subcommand("rep-exact", "exact repetition-code joint table");
  rep->add_option("--n", n, "repetition length");
  rep->add_option("--p", p, "flip rate")->required();
  rep->add_option("--discard-mass", discard_mass, "target discarded mass fraction");

  auto* hier = app.add_subcommand("hierarchical", "two-stage hierarchical-code experiment");
  hier->add_option("--d", d, "inner code distance");
  hier->add_option("--p", p, "inner physical error rate")->required();
  hier->add_option("--q", q, "measurement error rate (default p)");
  hier->add_option("--inner-rounds", inner_rounds, "inner memory rounds");
  hier->add_option("--samples", samples, "inner samples for the phi distribution");
  hier->add_option("--outer-rounds", outer_rounds, "outer BP rounds");
  hier->add_option("--trials", trials, "outer trials per mode");
  hier->add_option("--mode", mode, "soft|hard|both");

  auto* post = app.add_subcommand("postselect", "Monte Carlo postselection validation");
  post->add_option("--n", n, "repetition length");
  post->add_option("--p", p, "flip rate")->required();
  post->add_option("--V", v, "gate count");
  post->add_option("--eps", eps, "TVD target");
  post->add_option("--delta", delta, "relative cutoff (default: designed value)");
  post->add_option("--trials", trials, "circuit executions");

  auto* bnd = app.add_subcommand("bounds", "postselection bound calculators");
  bnd->add_option("--V", v, "gate count");
  bnd->add_option("--p", p, "flip rate")->required();
  bnd->add_option("--eps", eps, "TVD target")->required();

  auto* mem = app.add_subcommand("memory", "phenomenological memory experiment");
  mem->add_option("--d", d, "code distance");
  mem->add_option("--variant", variant, "rotated|planar");
  mem->add_option("--p", p, "data error rate")->required();
  mem->add_option("--q", q, "measurement error rate (default p)");
  mem->add_option("--rounds", rounds, "measurement rounds T");
  mem->add_option("--ratio", ratio, "SWAP ratio r for T = ceil(3 sqrt(n) d / r)");
  mem->add_option("--trials", trials, "Monte Carlo trials");
  mem->add_option("--decoder", decoder, "ufd|mwpm");

  auto* qinfo = app.add_subcommand("qclp-info", "outer-code construction report");
  qinfo->add_option("--lift", lift, "circulant size");

  // Global flags may also appear after the subcommand name.
  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  if (q < 0) q = p;
  try {
    if (sweep->parsed())
      return cmd_phi_sweep(d, variant, p, trials, decoder, seed, threads, out);
    if (rep->parsed()) return cmd_rep_exact(n, p, discard_mass, out);
    if (hier->parsed())
      return cmd_hierarchical(d, p, q, inner_rounds, samples, outer_rounds, trials, mode,
                              seed, threads, out);
    if (post->parsed())
      return cmd_postselect(n, p, v, eps, delta, trials, seed, threads, out);
    if (bnd->parsed()) return cmd_bounds(v, p, eps, out);
    if (mem->parsed())
      return cmd_memory(d, variant, p, q, rounds, ratio, trials, decoder, seed, threads, out);
    if (qinfo->parsed()) return cmd_qclp_info(lift, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
