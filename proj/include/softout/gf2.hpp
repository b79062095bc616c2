#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace softout {

/// Dense bit-packed matrix over GF(2). Rows are arrays of 64-bit words.
/// Sized for code-construction work (up to a few thousand columns), where
/// dense elimination is fast enough.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (words_[r * words_per_row_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    uint64_t& w = words_[r * words_per_row_ + c / 64];
    uint64_t m = uint64_t(1) << (c % 64);
    if (v) w |= m; else w &= ~m;
  }
  void flip(std::size_t r, std::size_t c) {
    words_[r * words_per_row_ + c / 64] ^= uint64_t(1) << (c % 64);
  }

  void xor_rows(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  std::vector<bool> row(std::size_t r) const;
  void set_row(std::size_t r, const std::vector<bool>& bits);

  /// y = M x over GF(2).
  std::vector<bool> multiply(const std::vector<bool>& x) const;
  BitMatrix multiply(const BitMatrix& other) const;
  BitMatrix transposed() const;

  /// Vertical concatenation; column counts must match.
  static BitMatrix vstack(const BitMatrix& top, const BitMatrix& bottom);
  static BitMatrix hstack(const BitMatrix& left, const BitMatrix& right);
  static BitMatrix identity(std::size_t n);

  std::size_t rank() const;
  /// Basis of the right kernel {x : Mx = 0}, one row per basis vector.
  BitMatrix kernel_basis() const;
  /// Inverse of a square invertible matrix; throws if singular.
  BitMatrix inverted() const;

  bool is_zero() const;
  bool operator==(const BitMatrix& other) const;

 private:
  std::size_t rows_ = 0, cols_ = 0, words_per_row_ = 0;
  std::vector<uint64_t> words_;

  friend class Gf2Echelon;
};

/// Incremental row-echelon accumulator: feed rows, query whether a candidate
/// row is independent of everything fed so far. Lowest-index pivot order.
class Gf2Echelon {
 public:
  explicit Gf2Echelon(std::size_t cols);
  /// Returns true (and absorbs the row) if it was independent.
  bool add_row(const std::vector<bool>& bits);
  bool add_row(const uint64_t* words);
  /// True if the row lies in the span of the absorbed rows.
  bool in_span(const std::vector<bool>& bits) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::size_t cols_, words_per_row_;
  std::vector<std::vector<uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<bool> xor_vec(const std::vector<bool>& a, const std::vector<bool>& b);
bool dot_gf2(const std::vector<bool>& a, const std::vector<bool>& b);
std::size_t weight(const std::vector<bool>& v);

}  // namespace softout
