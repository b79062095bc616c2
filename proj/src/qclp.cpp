#include "softout/codes.hpp"

#include <stdexcept>
#include <tuple>

namespace softout {

namespace {

// Elements of F2[x]/(x^ell - 1) as sorted exponent sets.
using Poly = std::vector<int>;
using PolyMatrix = std::vector<std::vector<Poly>>;

Poly poly_add(const Poly& a, const Poly& b) {
  // Symmetric difference: coefficients cancel mod 2.
  std::vector<int> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i] < b[j])) out.push_back(a[i++]);
    else if (i == a.size() || b[j] < a[i]) out.push_back(b[j++]);
    else { ++i; ++j; }
  }
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b, int ell) {
  std::vector<int> count(ell, 0);
  for (int x : a)
    for (int y : b) count[(x + y) % ell] ^= 1;
  Poly out;
  for (int e = 0; e < ell; ++e)
    if (count[e]) out.push_back(e);
  return out;
}

Poly normalize(const std::vector<int>& exps, int ell) {
  std::vector<int> count(ell, 0);
  for (int x : exps) count[((x % ell) + ell) % ell] ^= 1;
  Poly out;
  for (int e = 0; e < ell; ++e)
    if (count[e]) out.push_back(e);
  return out;
}

/// Antipode transpose: (i,j) entry moves to (j,i) with x^a -> x^{-a}.
PolyMatrix star(const PolyMatrix& m, int ell) {
  std::size_t rows = m.size(), cols = m[0].size();
  PolyMatrix out(cols, std::vector<Poly>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      std::vector<int> neg;
      for (int a : m[i][j]) neg.push_back(-a);
      out[j][i] = normalize(neg, ell);
    }
  return out;
}

PolyMatrix kron_left_identity(std::size_t n, const PolyMatrix& m) {
  // I_n (x) m
  std::size_t r = m.size(), c = m[0].size();
  PolyMatrix out(n * r, std::vector<Poly>(n * c));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) out[b * r + i][b * c + j] = m[i][j];
  return out;
}

PolyMatrix kron_right_identity(const PolyMatrix& m, std::size_t n) {
  // m (x) I_n
  std::size_t r = m.size(), c = m[0].size();
  PolyMatrix out(r * n, std::vector<Poly>(c * n));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t b = 0; b < n; ++b) out[i * n + b][j * n + b] = m[i][j];
  return out;
}

PolyMatrix hconcat(const PolyMatrix& left, const PolyMatrix& right) {
  if (left.size() != right.size()) throw std::invalid_argument("qclp: block row mismatch");
  PolyMatrix out = left;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i].insert(out[i].end(), right[i].begin(), right[i].end());
  return out;
}

/// rho: expand each ring entry to an ell x ell circulant, x^a -> shift by a.
BitMatrix expand(const PolyMatrix& m, int ell) {
  std::size_t r = m.size(), c = m[0].size();
  BitMatrix out(r * ell, c * ell);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (int a : m[i][j])
        for (int s = 0; s < ell; ++s)
          out.set(i * ell + s, j * ell + (s + a) % ell, true);
  return out;
}

}  // namespace

CssCode qclp_code(const QclpSpec& spec) {
  const int ell = spec.lift;
  if (ell < 2) throw std::invalid_argument("qclp: lift must be >= 2");
  const std::size_t m = spec.base.size();
  if (m == 0) throw std::invalid_argument("qclp: empty base matrix");
  const std::size_t np = spec.base[0].size();

  PolyMatrix a(m, std::vector<Poly>(np));
  for (std::size_t i = 0; i < m; ++i) {
    if (spec.base[i].size() != np) throw std::invalid_argument("qclp: ragged base matrix");
    for (std::size_t j = 0; j < np; ++j) a[i][j] = normalize(spec.base[i][j], ell);
  }
  PolyMatrix a_star = star(a, ell);

  // H_Z = ( A (x) I_n' | I_m (x) A* ), H_X = ( (I_n' (x) A*)^T | (A (x) I_m)^T ).
  // Orthogonality: both products equal A (x) A* over the commutative ring.
  BitMatrix h_z = expand(hconcat(kron_right_identity(a, np), kron_left_identity(m, a_star)), ell);
  BitMatrix h_x = BitMatrix::hstack(expand(kron_left_identity(np, a_star), ell).transposed(),
                                    expand(kron_right_identity(a, m), ell).transposed());

  if (!h_x.multiply(h_z.transposed()).is_zero())
    throw std::runtime_error("qclp: check matrices do not commute");

  CssCode code{h_x, h_z, BitMatrix(), BitMatrix()};
  std::tie(code.l_x, code.l_z) = logical_basis(h_x, h_z);
  return code;
}

QclpSpec qclp_1054_140_spec() {
  QclpSpec spec;
  spec.lift = 31;
  const int exps[3][5] = {{1, 2, 4, 8, 16}, {5, 10, 20, 9, 18}, {25, 19, 7, 14, 28}};
  spec.base.resize(3);
  for (int i = 0; i < 3; ++i) {
    spec.base[i].resize(5);
    for (int j = 0; j < 5; ++j) spec.base[i][j] = {exps[i][j]};
  }
  return spec;
}

}  // namespace softout
