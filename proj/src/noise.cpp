#include "softout/noise.hpp"

#include <stdexcept>

#include "softout/mwpm.hpp"
#include "softout/ufd.hpp"

namespace softout {

std::vector<bool> sample_error(int n, double p, std::mt19937_64& rng) {
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("sample_error: p outside [0,1]");
  std::vector<bool> e(n);
  if (p == 0) return e;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < n; ++i) e[i] = uni(rng) < p;
  return e;
}

std::vector<bool> syndrome(const BitMatrix& h, const std::vector<bool>& e) {
  return h.multiply(e);
}

MemoryResult memory_experiment(const SurfaceCode& code, const SpacetimeGraph& st,
                               DecoderKind decoder, double p, double q,
                               std::mt19937_64& rng) {
  const int n = static_cast<int>(code.code.n());
  const int r = st.n_checks;
  const int T = st.rounds;
  if (st.n_qubits != n) throw std::invalid_argument("memory: spacetime graph mismatch");

  std::vector<bool> error(n, false);
  std::vector<bool> prev_m(r, false);
  std::vector<bool> detectors(T * r, false);
  for (int t = 0; t < T; ++t) {
    std::vector<bool> flips = sample_error(n, p, rng);
    for (int i = 0; i < n; ++i) error[i] = error[i] != flips[i];
    std::vector<bool> m = syndrome(code.code.h_z, error);
    if (t + 1 < T) {
      std::vector<bool> u = sample_error(r, q, rng);
      for (int i = 0; i < r; ++i) m[i] = m[i] != u[i];
    }
    for (int i = 0; i < r; ++i) detectors[st.vertex(t, i)] = m[i] != prev_m[i];
    prev_m = m;
  }

  std::vector<int> correction;
  RadiiAssignment radii;
  if (decoder == DecoderKind::Ufd) {
    UfdResult res = ufd_decode(st.graph, detectors);
    correction = std::move(res.correction);
    radii = std::move(res.radii);
  } else {
    MatchingResult res = mwpm_decode(st.graph, detectors);
    correction = std::move(res.correction);
    radii = std::move(res.radii);
  }
  double phi = soft_output(st.graph, radii, st.b1, st.b2);

  std::vector<bool> residual = error;
  for (int e : correction) {
    int fid = st.graph.edge(e).fault_id;
    if (fid < T * n) {
      int qubit = fid % n;
      residual[qubit] = !residual[qubit];
    }
  }
  std::vector<bool> logical = code.code.l_z.multiply(residual);
  bool failure = false;
  for (bool b : logical) failure = failure || b;
  return {failure, phi};
}

}  // namespace softout
