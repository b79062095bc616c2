#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "softout/gf2.hpp"

using namespace softout;

TEST_CASE("get/set/flip round trip") {
  BitMatrix m(3, 70);  // spans a word boundary
  CHECK_FALSE(m.get(1, 65));
  m.set(1, 65, true);
  CHECK(m.get(1, 65));
  m.flip(1, 65);
  CHECK_FALSE(m.get(1, 65));
  m.set(2, 0, true);
  CHECK(m.get(2, 0));
  CHECK_FALSE(m.get(2, 1));
}

TEST_CASE("identity and rank") {
  BitMatrix id = BitMatrix::identity(5);
  CHECK(id.rank() == 5);
  CHECK(id.multiply(id) == id);
  CHECK(id.inverted() == id);
}

TEST_CASE("xor_rows") {
  BitMatrix m(2, 4);
  m.set(0, 0, true);
  m.set(0, 2, true);
  m.set(1, 2, true);
  m.set(1, 3, true);
  m.xor_rows(0, 1);
  CHECK(m.get(0, 0));
  CHECK_FALSE(m.get(0, 2));
  CHECK(m.get(0, 3));
  CHECK(m.get(1, 2));  // source untouched
}

TEST_CASE("multiply vector matches per-row parity") {
  std::mt19937_64 rng(7);
  BitMatrix m(13, 29);
  std::vector<bool> x(29);
  for (std::size_t r = 0; r < 13; ++r)
    for (std::size_t c = 0; c < 29; ++c) m.set(r, c, rng() & 1);
  for (std::size_t c = 0; c < 29; ++c) x[c] = rng() & 1;
  std::vector<bool> y = m.multiply(x);
  for (std::size_t r = 0; r < 13; ++r) {
    bool acc = false;
    for (std::size_t c = 0; c < 29; ++c) acc = acc != (m.get(r, c) && x[c]);
    CHECK(y[r] == acc);
  }
}

TEST_CASE("matrix multiply and transpose") {
  std::mt19937_64 rng(11);
  BitMatrix a(6, 9), b(9, 4);
  for (std::size_t r = 0; r < 6; ++r)
    for (std::size_t c = 0; c < 9; ++c) a.set(r, c, rng() & 1);
  for (std::size_t r = 0; r < 9; ++r)
    for (std::size_t c = 0; c < 4; ++c) b.set(r, c, rng() & 1);
  BitMatrix ab = a.multiply(b);
  BitMatrix btat = b.transposed().multiply(a.transposed());
  CHECK(ab.transposed() == btat);
}

TEST_CASE("kernel basis spans the kernel") {
  // Rank-2 matrix on 5 columns -> kernel dimension 3.
  BitMatrix m(3, 5);
  m.set(0, 0, true);
  m.set(0, 1, true);
  m.set(1, 1, true);
  m.set(1, 2, true);
  m.set(2, 0, true);  // row0 + row1
  m.set(2, 2, true);
  CHECK(m.rank() == 2);
  BitMatrix k = m.kernel_basis();
  CHECK(k.rows() == 3);
  for (std::size_t r = 0; r < k.rows(); ++r) {
    std::vector<bool> v = k.row(r);
    for (bool b : m.multiply(v)) CHECK_FALSE(b);
  }
  Gf2Echelon ech(5);
  for (std::size_t r = 0; r < k.rows(); ++r) CHECK(ech.add_row(k.row(r)));
}

TEST_CASE("inverted") {
  std::mt19937_64 rng(3);
  BitMatrix m(8, 8);
  do {
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c) m.set(r, c, rng() & 1);
  } while (m.rank() < 8);
  CHECK(m.multiply(m.inverted()) == BitMatrix::identity(8));
  BitMatrix singular(2, 2);
  singular.set(0, 0, true);
  singular.set(1, 0, true);
  CHECK_THROWS(singular.inverted());
}

TEST_CASE("vstack / hstack") {
  BitMatrix a = BitMatrix::identity(2);
  BitMatrix b(1, 2);
  b.set(0, 0, true);
  b.set(0, 1, true);
  BitMatrix v = BitMatrix::vstack(a, b);
  CHECK(v.rows() == 3);
  CHECK(v.rank() == 2);
  BitMatrix h = BitMatrix::hstack(a, a);
  CHECK(h.cols() == 4);
  CHECK(h.get(1, 3));
}

TEST_CASE("echelon add_row / in_span") {
  Gf2Echelon ech(4);
  CHECK(ech.add_row({true, true, false, false}));
  CHECK(ech.add_row({false, true, true, false}));
  CHECK_FALSE(ech.add_row({true, false, true, false}));  // sum of the two
  CHECK(ech.in_span({true, false, true, false}));
  CHECK_FALSE(ech.in_span({false, false, false, true}));
  CHECK(ech.rank() == 2);
}

TEST_CASE("vector helpers") {
  std::vector<bool> a{true, false, true}, b{true, true, false};
  CHECK(xor_vec(a, b) == std::vector<bool>{false, true, true});
  CHECK(dot_gf2(a, b) == true);
  CHECK(weight(a) == 2);
}
