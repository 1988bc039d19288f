#include "z4/packed_vector.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "z4/error.hpp"

namespace z4 {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

// Mask for the valid bits of the last word of an n-bit plane.
std::uint64_t tail_mask(std::size_t n) {
  std::size_t rem = n % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

void check_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b)
    throw DimensionError(std::string(op) + ": length mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
}

}  // namespace

PackedVector::PackedVector(std::size_t n)
    : size_(n), lo_(words_for(n), 0), hi_(words_for(n), 0) {}

PackedVector PackedVector::from_values(std::span<const std::uint8_t> values) {
  PackedVector v(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) v.set(i, Digit(values[i]));
  return v;
}

PackedVector PackedVector::from_values(std::initializer_list<int> values) {
  PackedVector v(values.size());
  std::size_t i = 0;
  for (int x : values) v.set(i++, Digit(static_cast<unsigned>(x)));
  return v;
}

Digit PackedVector::get(std::size_t i) const {
  if (i >= size_)
    throw DimensionError("PackedVector::get: index " + std::to_string(i) +
                         " out of range for length " + std::to_string(size_));
  std::size_t w = i / kWordBits, b = i % kWordBits;
  unsigned lo = static_cast<unsigned>(lo_[w] >> b) & 1u;
  unsigned hi = static_cast<unsigned>(hi_[w] >> b) & 1u;
  return Digit(hi << 1 | lo);
}

void PackedVector::set(std::size_t i, Digit v) {
  if (i >= size_)
    throw DimensionError("PackedVector::set: index " + std::to_string(i) +
                         " out of range for length " + std::to_string(size_));
  std::size_t w = i / kWordBits, b = i % kWordBits;
  std::uint64_t bit = std::uint64_t{1} << b;
  lo_[w] = (lo_[w] & ~bit) | (std::uint64_t{v.lo()} << b);
  hi_[w] = (hi_[w] & ~bit) | (std::uint64_t{v.hi()} << b);
}

PackedVector PackedVector::subrange(std::size_t pos, std::size_t count) const {
  if (pos > size_ || count > size_ - pos)
    throw DimensionError("PackedVector::subrange: [" + std::to_string(pos) +
                         ", +" + std::to_string(count) + ") out of range for length " +
                         std::to_string(size_));
  PackedVector out(count);
  if (count == 0) return out;
  std::size_t base = pos / kWordBits, off = pos % kWordBits;
  for (std::size_t w = 0; w < out.lo_.size(); ++w) {
    std::uint64_t lo = lo_[base + w] >> off;
    std::uint64_t hi = hi_[base + w] >> off;
    if (off != 0 && base + w + 1 < lo_.size()) {
      lo |= lo_[base + w + 1] << (kWordBits - off);
      hi |= hi_[base + w + 1] << (kWordBits - off);
    }
    out.lo_[w] = lo;
    out.hi_[w] = hi;
  }
  std::uint64_t m = tail_mask(count);
  out.lo_.back() &= m;
  out.hi_.back() &= m;
  return out;
}

PackedVector PackedVector::zero_extended(std::size_t n) const {
  if (n < size_)
    throw DimensionError("PackedVector::zero_extended: target shorter than source");
  PackedVector out(n);
  std::copy(lo_.begin(), lo_.end(), out.lo_.begin());
  std::copy(hi_.begin(), hi_.end(), out.hi_.begin());
  return out;
}

PackedVector ma_packed(const PackedVector& a, const PackedVector& b,
                       const PackedVector& s) {
  check_same_size(a.size(), b.size(), "ma_packed");
  check_same_size(a.size(), s.size(), "ma_packed");
  PackedVector c(a.size());
  auto alo = a.plane_lo(), ahi = a.plane_hi();
  auto blo = b.plane_lo(), bhi = b.plane_hi();
  auto slo = s.plane_lo(), shi = s.plane_hi();
  for (std::size_t w = 0; w < c.word_count(); ++w) {
    std::uint64_t p0 = alo[w] & blo[w];
    std::uint64_t p1 = (ahi[w] & blo[w]) ^ (alo[w] & bhi[w]);
    c.lo_[w] = p0 ^ slo[w];
    c.hi_[w] = p1 ^ shi[w] ^ (p0 & slo[w]);
  }
  return c;
}

namespace detail {

Digit dot_words(const std::uint64_t* ulo, const std::uint64_t* uhi,
                const std::uint64_t* vlo, const std::uint64_t* vhi,
                std::size_t words, Digit acc) {
  // Per-lane products never carry past the high plane mod 4, so the whole
  // sum reduces to population counts of the two product planes.
  std::uint64_t ones = 0, twos = 0;
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t p0 = ulo[w] & vlo[w];
    std::uint64_t p1 = (uhi[w] & vlo[w]) ^ (ulo[w] & vhi[w]);
    ones += static_cast<std::uint64_t>(std::popcount(p0));
    twos += static_cast<std::uint64_t>(std::popcount(p1));
  }
  return Digit(static_cast<unsigned>((acc.value() + ones + 2 * twos) & 3));
}

}  // namespace detail

Digit dot(const PackedVector& u, const PackedVector& v, Digit acc_in) {
  check_same_size(u.size(), v.size(), "dot");
  return detail::dot_words(u.plane_lo().data(), u.plane_hi().data(),
                           v.plane_lo().data(), v.plane_hi().data(),
                           u.word_count(), acc_in);
}

Digit dot_iterated(const PackedVector& u, const PackedVector& v, std::size_t n) {
  check_same_size(u.size(), v.size(), "dot_iterated");
  if (n == 0) throw DomainError("dot_iterated: chunk width must be positive");
  std::size_t k = u.size();
  if (k == 0) return Digit(0);
  std::size_t chunks = (k + n - 1) / n;
  PackedVector upad, vpad;
  const PackedVector* up = &u;
  const PackedVector* vp = &v;
  if (k != chunks * n) {
    upad = u.zero_extended(chunks * n);
    vpad = v.zero_extended(chunks * n);
    up = &upad;
    vp = &vpad;
  }
  Digit acc(0);
  for (std::size_t c = 0; c < chunks; ++c)
    acc = dot(up->subrange(c * n, n), vp->subrange(c * n, n), acc);
  return acc;
}

}  // namespace z4
