#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "z4/ma.hpp"

namespace z4 {

/// Vector over Z4 stored as two bit-planes, one bit per element per plane.
/// Element i is 2*plane_hi[i] + plane_lo[i]. Bits of the final partial word
/// beyond size() are kept zero in both planes, so whole-word operations
/// (popcount, AND/XOR folds) are total.
class PackedVector {
 public:
  PackedVector() = default;
  explicit PackedVector(std::size_t n);

  static PackedVector from_values(std::span<const std::uint8_t> values);
  static PackedVector from_values(std::initializer_list<int> values);

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return lo_.size(); }

  Digit get(std::size_t i) const;        // DimensionError out of range
  void set(std::size_t i, Digit v);      // DimensionError out of range

  /// Copy of elements [pos, pos+count); pos+count must not exceed size().
  PackedVector subrange(std::size_t pos, std::size_t count) const;

  /// Copy into a longer zero-tailed vector (n >= size()).
  PackedVector zero_extended(std::size_t n) const;

  std::span<const std::uint64_t> plane_lo() const { return lo_; }
  std::span<const std::uint64_t> plane_hi() const { return hi_; }

  bool operator==(const PackedVector&) const = default;

 private:
  friend PackedVector ma_packed(const PackedVector&, const PackedVector&,
                                const PackedVector&);

  std::size_t size_ = 0;
  std::vector<std::uint64_t> lo_;
  std::vector<std::uint64_t> hi_;
};

/// Lane-parallel multiply-accumulate: result[i] = (a[i]*b[i] + s[i]) mod 4.
/// Lengths must match (DimensionError otherwise).
PackedVector ma_packed(const PackedVector& a, const PackedVector& b,
                       const PackedVector& s);

/// (acc_in + sum_i u[i]*v[i]) mod 4. Equals a left fold of ma() over the
/// element pairs. Lengths must match.
Digit dot(const PackedVector& u, const PackedVector& v, Digit acc_in = Digit(0));

/// Dot product computed the way the chunked dataflow does it: both inputs
/// are zero-padded to a multiple of the chunk width n and processed n
/// elements at a time, each chunk's output feeding the next chunk's
/// accumulator. The result is independent of n.
Digit dot_iterated(const PackedVector& u, const PackedVector& v, std::size_t n);

namespace detail {

/// Word-span dot kernel. Both operands must have their tail bits masked to
/// zero; `words` is the common word count.
Digit dot_words(const std::uint64_t* ulo, const std::uint64_t* uhi,
                const std::uint64_t* vlo, const std::uint64_t* vhi,
                std::size_t words, Digit acc);

}  // namespace detail

}  // namespace z4
