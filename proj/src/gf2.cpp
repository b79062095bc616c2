#include "softout/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace softout {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64),
      words_(rows * ((cols + 63) / 64), 0) {}

void BitMatrix::xor_rows(std::size_t dst, std::size_t src) {
  uint64_t* d = &words_[dst * words_per_row_];
  const uint64_t* s = &words_[src * words_per_row_];
  for (std::size_t i = 0; i < words_per_row_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < words_per_row_; ++i)
    std::swap(words_[a * words_per_row_ + i], words_[b * words_per_row_ + i]);
}

std::vector<bool> BitMatrix::row(std::size_t r) const {
  std::vector<bool> out(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out[c] = get(r, c);
  return out;
}

void BitMatrix::set_row(std::size_t r, const std::vector<bool>& bits) {
  for (std::size_t c = 0; c < cols_; ++c) set(r, c, bits[c]);
}

std::vector<bool> BitMatrix::multiply(const std::vector<bool>& x) const {
  if (x.size() != cols_) throw std::invalid_argument("gf2: dimension mismatch");
  std::vector<uint64_t> xw(words_per_row_, 0);
  for (std::size_t c = 0; c < cols_; ++c)
    if (x[c]) xw[c / 64] |= uint64_t(1) << (c % 64);
  std::vector<bool> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    uint64_t acc = 0;
    const uint64_t* w = &words_[r * words_per_row_];
    for (std::size_t i = 0; i < words_per_row_; ++i) acc ^= w[i] & xw[i];
    y[r] = std::popcount(acc) & 1;
  }
  return y;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("gf2: dimension mismatch");
  BitMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    uint64_t* dst = &out.words_[r * out.words_per_row_];
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const uint64_t* src = &other.words_[k * other.words_per_row_];
      for (std::size_t i = 0; i < out.words_per_row_; ++i) dst[i] ^= src[i];
    }
  }
  return out;
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) out.set(c, r, true);
  return out;
}

BitMatrix BitMatrix::vstack(const BitMatrix& top, const BitMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw std::invalid_argument("gf2: vstack cols");
  BitMatrix out(top.rows_ + bottom.rows_, top.cols_);
  std::copy(top.words_.begin(), top.words_.end(), out.words_.begin());
  std::copy(bottom.words_.begin(), bottom.words_.end(),
            out.words_.begin() + top.rows_ * top.words_per_row_);
  return out;
}

BitMatrix BitMatrix::hstack(const BitMatrix& left, const BitMatrix& right) {
  if (left.rows_ != right.rows_) throw std::invalid_argument("gf2: hstack rows");
  BitMatrix out(left.rows_, left.cols_ + right.cols_);
  for (std::size_t r = 0; r < left.rows_; ++r) {
    for (std::size_t c = 0; c < left.cols_; ++c)
      if (left.get(r, c)) out.set(r, c, true);
    for (std::size_t c = 0; c < right.cols_; ++c)
      if (right.get(r, c)) out.set(r, left.cols_ + c, true);
  }
  return out;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out.set(i, i, true);
  return out;
}

std::size_t BitMatrix::rank() const {
  Gf2Echelon ech(cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    ech.add_row(&words_[r * words_per_row_]);
  return ech.rank();
}

BitMatrix BitMatrix::kernel_basis() const {
  // Eliminate on [M^T | I]: rows that reduce to zero in the M^T block give
  // kernel vectors of M in the identity block.
  BitMatrix aug = hstack(transposed(), identity(cols_));
  std::size_t pr = 0;
  for (std::size_t pc = 0; pc < rows_ && pr < cols_; ++pc) {
    std::size_t pivot = pr;
    while (pivot < cols_ && !aug.get(pivot, pc)) ++pivot;
    if (pivot == cols_) continue;
    aug.swap_rows(pr, pivot);
    for (std::size_t r = 0; r < cols_; ++r)
      if (r != pr && aug.get(r, pc)) aug.xor_rows(r, pr);
    ++pr;
  }
  std::vector<std::size_t> null_rows;
  for (std::size_t r = pr; r < cols_; ++r) null_rows.push_back(r);
  BitMatrix out(null_rows.size(), cols_);
  for (std::size_t i = 0; i < null_rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c)
      if (aug.get(null_rows[i], rows_ + c)) out.set(i, c, true);
  return out;
}

BitMatrix BitMatrix::inverted() const {
  if (rows_ != cols_) throw std::invalid_argument("gf2: invert non-square");
  BitMatrix aug = hstack(*this, identity(rows_));
  for (std::size_t pc = 0; pc < cols_; ++pc) {
    std::size_t pivot = pc;
    while (pivot < rows_ && !aug.get(pivot, pc)) ++pivot;
    if (pivot == rows_) throw std::runtime_error("gf2: singular matrix");
    aug.swap_rows(pc, pivot);
    for (std::size_t r = 0; r < rows_; ++r)
      if (r != pc && aug.get(r, pc)) aug.xor_rows(r, pc);
  }
  BitMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (aug.get(r, cols_ + c)) out.set(r, c, true);
  return out;
}

bool BitMatrix::is_zero() const {
  for (uint64_t w : words_)
    if (w) return false;
  return true;
}

bool BitMatrix::operator==(const BitMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

Gf2Echelon::Gf2Echelon(std::size_t cols)
    : cols_(cols), words_per_row_((cols + 63) / 64) {}

bool Gf2Echelon::add_row(const std::vector<bool>& bits) {
  std::vector<uint64_t> w(words_per_row_, 0);
  for (std::size_t c = 0; c < cols_; ++c)
    if (bits[c]) w[c / 64] |= uint64_t(1) << (c % 64);
  return add_row(w.data());
}

bool Gf2Echelon::add_row(const uint64_t* words) {
  std::vector<uint64_t> w(words, words + words_per_row_);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t p = pivots_[i];
    if ((w[p / 64] >> (p % 64)) & 1)
      for (std::size_t j = 0; j < words_per_row_; ++j) w[j] ^= rows_[i][j];
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    if ((w[c / 64] >> (c % 64)) & 1) {
      rows_.push_back(std::move(w));
      pivots_.push_back(c);
      return true;
    }
  }
  return false;
}

bool Gf2Echelon::in_span(const std::vector<bool>& bits) const {
  std::vector<uint64_t> w(words_per_row_, 0);
  for (std::size_t c = 0; c < cols_; ++c)
    if (bits[c]) w[c / 64] |= uint64_t(1) << (c % 64);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t p = pivots_[i];
    if ((w[p / 64] >> (p % 64)) & 1)
      for (std::size_t j = 0; j < words_per_row_; ++j) w[j] ^= rows_[i][j];
  }
  for (uint64_t x : w)
    if (x) return false;
  return true;
}

std::vector<bool> xor_vec(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("gf2: xor size");
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] != b[i];
  return out;
}

bool dot_gf2(const std::vector<bool>& a, const std::vector<bool>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("gf2: dot size");
  bool acc = false;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= a[i] && b[i];
  return acc;
}

std::size_t weight(const std::vector<bool>& v) {
  std::size_t w = 0;
  for (bool b : v) w += b;
  return w;
}

}  // namespace softout
