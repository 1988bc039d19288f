#include "z4/matrix.hpp"

#include <algorithm>
#include <string>

#include "z4/error.hpp"

namespace z4 {

namespace {

constexpr std::size_t kWordBits = 64;

std::uint64_t tail_mask(std::size_t n) {
  std::size_t rem = n % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

void check_index(const Matrix& m, std::size_t i, std::size_t j, const char* op) {
  if (i >= m.rows() || j >= m.cols())
    throw DimensionError(std::string(op) + ": index (" + std::to_string(i) + "," +
                         std::to_string(j) + ") out of range for " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError(std::string(op) + ": shape mismatch (" +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
}

void check_square_pair(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError(std::string(op) + ": operands must be square and equal-sized");
}

}  // namespace

void BlockParams::validate() const {
  if (block == 0 || n == 0 || depth == 0)
    throw DomainError("BlockParams: block, n and depth must all be at least 1");
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      wpr_((cols + kWordBits - 1) / kWordBits),
      lo_(rows * wpr_, 0),
      hi_(rows * wpr_, 0) {}

Matrix Matrix::identity(std::size_t k) {
  Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set_unchecked(i, i, Digit(1));
  return m;
}

Digit Matrix::get(std::size_t i, std::size_t j) const {
  check_index(*this, i, j, "Matrix::get");
  return get_unchecked(i, j);
}

void Matrix::set(std::size_t i, std::size_t j, Digit v) {
  check_index(*this, i, j, "Matrix::set");
  set_unchecked(i, j, v);
}

Digit Matrix::get_unchecked(std::size_t i, std::size_t j) const {
  std::size_t w = i * wpr_ + j / kWordBits, b = j % kWordBits;
  unsigned lo = static_cast<unsigned>(lo_[w] >> b) & 1u;
  unsigned hi = static_cast<unsigned>(hi_[w] >> b) & 1u;
  return Digit(hi << 1 | lo);
}

void Matrix::set_unchecked(std::size_t i, std::size_t j, Digit v) {
  std::size_t w = i * wpr_ + j / kWordBits, b = j % kWordBits;
  std::uint64_t bit = std::uint64_t{1} << b;
  lo_[w] = (lo_[w] & ~bit) | (std::uint64_t{v.lo()} << b);
  hi_[w] = (hi_[w] & ~bit) | (std::uint64_t{v.hi()} << b);
}

std::span<const std::uint64_t> Matrix::row_lo(std::size_t i) const {
  return {lo_.data() + i * wpr_, wpr_};
}

std::span<const std::uint64_t> Matrix::row_hi(std::size_t i) const {
  return {hi_.data() + i * wpr_, wpr_};
}

namespace detail {

void add_into(Matrix& dst, const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "add");
  if (dst.rows_ != a.rows_ || dst.cols_ != a.cols_) dst = Matrix(a.rows_, a.cols_);
  for (std::size_t w = 0; w < a.lo_.size(); ++w) {
    std::uint64_t carry = a.lo_[w] & b.lo_[w];
    dst.lo_[w] = a.lo_[w] ^ b.lo_[w];
    dst.hi_[w] = a.hi_[w] ^ b.hi_[w] ^ carry;
  }
}

void sub_into(Matrix& dst, const Matrix& a, const Matrix& b) {
  check_same_shape(a, b, "sub");
  if (dst.rows_ != a.rows_ || dst.cols_ != a.cols_) dst = Matrix(a.rows_, a.cols_);
  for (std::size_t w = 0; w < a.lo_.size(); ++w) {
    // borrow = ~a0 & b0; padding stays zero because b's padding is zero
    std::uint64_t borrow = ~a.lo_[w] & b.lo_[w];
    dst.lo_[w] = a.lo_[w] ^ b.lo_[w];
    dst.hi_[w] = a.hi_[w] ^ b.hi_[w] ^ borrow;
  }
}

}  // namespace detail

Matrix add(const Matrix& a, const Matrix& b) {
  Matrix c;
  detail::add_into(c, a, b);
  return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  Matrix c;
  detail::sub_into(c, a, b);
  return c;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      t.set_unchecked(j, i, m.get_unchecked(i, j));
  return t;
}

Matrix embed(const Matrix& m, std::size_t rows, std::size_t cols) {
  if (rows < m.rows() || cols < m.cols())
    throw DimensionError("embed: target smaller than source");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < m.rows_; ++i) {
    std::copy_n(m.lo_.begin() + i * m.wpr_, m.wpr_, out.lo_.begin() + i * out.wpr_);
    std::copy_n(m.hi_.begin() + i * m.wpr_, m.wpr_, out.hi_.begin() + i * out.wpr_);
  }
  return out;
}

Matrix crop(const Matrix& m, std::size_t rows, std::size_t cols) {
  if (rows > m.rows() || cols > m.cols())
    throw DimensionError("crop: target larger than source");
  Matrix out(rows, cols);
  std::uint64_t mask = tail_mask(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy_n(m.lo_.begin() + i * m.wpr_, out.wpr_, out.lo_.begin() + i * out.wpr_);
    std::copy_n(m.hi_.begin() + i * m.wpr_, out.wpr_, out.hi_.begin() + i * out.wpr_);
    out.lo_[i * out.wpr_ + out.wpr_ - 1] &= mask;
    out.hi_[i * out.wpr_ + out.wpr_ - 1] &= mask;
  }
  return out;
}

PackedVector row_vector(const Matrix& m, std::size_t i, std::size_t padded_len) {
  if (i >= m.rows())
    throw DimensionError("row_vector: row " + std::to_string(i) + " out of range");
  std::size_t len = std::max(m.cols(), padded_len);
  PackedVector v(len);
  for (std::size_t j = 0; j < m.cols(); ++j) v.set(j, m.get_unchecked(i, j));
  return v;
}

Matrix mul_naive(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("mul: inner dimensions disagree (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
  Matrix bt = transpose(b);
  Matrix c(a.rows(), b.cols());
  std::size_t w = a.words_per_row();
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      c.set_unchecked(i, j,
                      detail::dot_words(a.row_lo(i).data(), a.row_hi(i).data(),
                                        bt.row_lo(j).data(), bt.row_hi(j).data(), w,
                                        Digit(0)));
  return c;
}

Matrix mul_blocked(const Matrix& a, const Matrix& b, const BlockParams& p) {
  p.validate();
  check_square_pair(a, b, "mul_blocked");
  std::size_t k = a.rows();
  if (k == 0) return Matrix();
  std::size_t tiles = (k + p.block - 1) / p.block;
  std::size_t padded = tiles * p.block;
  std::size_t chunked = ((padded + p.n - 1) / p.n) * p.n;

  Matrix ap = embed(a, padded, padded);
  Matrix bt = transpose(embed(b, padded, padded));
  std::vector<PackedVector> rows(padded), cols(padded);
  for (std::size_t i = 0; i < padded; ++i) {
    rows[i] = row_vector(ap, i, chunked);
    cols[i] = row_vector(bt, i, chunked);
  }

  Matrix c(padded, padded);
  for (std::size_t ti = 0; ti < tiles; ++ti)
    for (std::size_t tj = 0; tj < tiles; ++tj)
      for (std::size_t i = ti * p.block; i < (ti + 1) * p.block; ++i)
        for (std::size_t j = tj * p.block; j < (tj + 1) * p.block; ++j)
          c.set_unchecked(i, j, dot_iterated(rows[i], cols[j], p.n));
  return padded == k ? c : crop(c, k, k);
}

Matrix matpow(const Matrix& m, const BigUint& e) {
  if (m.rows() != m.cols())
    throw DimensionError("matpow: matrix must be square");
  if (e < 0) throw DomainError("matpow: exponent must be non-negative");
  Matrix result = Matrix::identity(m.rows());
  Matrix base = m;
  BigUint exp = e;
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) result = mul_naive(result, base);
    exp >>= 1;
    if (exp > 0) base = mul_naive(base, base);
  }
  return result;
}

}  // namespace z4
