#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <span>
#include <vector>

#include "z4/ma.hpp"
#include "z4/packed_vector.hpp"

namespace z4 {

using BigUint = boost::multiprecision::cpp_int;

class Matrix;

namespace detail {
// Elementwise kernels shared with the recursive multiplier; dst is resized.
void add_into(Matrix& dst, const Matrix& a, const Matrix& b);
void sub_into(Matrix& dst, const Matrix& a, const Matrix& b);
}  // namespace detail

/// Copy into the top-left of a rows x cols zero matrix (must not shrink).
Matrix embed(const Matrix& m, std::size_t rows, std::size_t cols);
/// Top-left rows x cols corner (must not grow).
Matrix crop(const Matrix& m, std::size_t rows, std::size_t cols);

/// Tiling parameters of the dataflow multiplier.
struct BlockParams {
  std::size_t block = 20;  // output tile edge
  std::size_t n = 28;      // dot-product chunk width
  std::size_t depth = 32;  // container depth (chunks per row)

  void validate() const;  // DomainError unless all three are >= 1
};

/// Dense matrix over Z4. Two row-major bit-planes; every row starts at a
/// word boundary and the bits beyond cols() in a row's last word are zero.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);  // zero-filled

  static Matrix identity(std::size_t k);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return wpr_; }

  Digit get(std::size_t i, std::size_t j) const;    // DimensionError out of range
  void set(std::size_t i, std::size_t j, Digit v);  // DimensionError out of range

  // Unchecked fast paths for kernels.
  Digit get_unchecked(std::size_t i, std::size_t j) const;
  void set_unchecked(std::size_t i, std::size_t j, Digit v);

  std::span<const std::uint64_t> row_lo(std::size_t i) const;
  std::span<const std::uint64_t> row_hi(std::size_t i) const;

  bool operator==(const Matrix&) const = default;

 private:
  friend void detail::add_into(Matrix&, const Matrix&, const Matrix&);
  friend void detail::sub_into(Matrix&, const Matrix&, const Matrix&);
  friend Matrix embed(const Matrix&, std::size_t, std::size_t);
  friend Matrix crop(const Matrix&, std::size_t, std::size_t);

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t wpr_ = 0;
  std::vector<std::uint64_t> lo_;
  std::vector<std::uint64_t> hi_;
};

Matrix add(const Matrix& a, const Matrix& b);  // elementwise mod 4
Matrix sub(const Matrix& a, const Matrix& b);  // additive inverse mod 4
Matrix transpose(const Matrix& m);

/// Row i as a packed vector of length max(cols, padded_len), zero-tailed.
PackedVector row_vector(const Matrix& m, std::size_t i, std::size_t padded_len = 0);

/// Reference multiplication: one packed dot product per output element,
/// running over rows of A and rows of a transposed copy of B.
Matrix mul_naive(const Matrix& a, const Matrix& b);

/// Tiled dataflow multiplication: both operands are padded to a multiple of
/// the tile edge and every block x block output tile is produced by chunked
/// dot products of width p.n. Equals mul_naive on all inputs.
///
/// Note: padding rounds the edge up to a multiple of p.block, not of the
/// chunk width p.n; the chunk width only controls how each dot product is
/// split.
Matrix mul_blocked(const Matrix& a, const Matrix& b, const BlockParams& p = {});

/// M^e mod 4 by square-and-multiply over the bits of e; e = 0 gives the
/// identity. The exponent is arbitrary precision: selecting uniform
/// recurrences needs 2^(d+1) - 2 with d in the hundreds.
Matrix matpow(const Matrix& m, const BigUint& e);

}  // namespace z4
