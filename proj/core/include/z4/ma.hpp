#pragma once

#include <array>
#include <cstdint>

namespace z4 {

/// One element of the mod-4 residue ring, decomposed as value = 2*hi + lo.
/// The constructor keeps only the low two bits of its argument.
class Digit {
 public:
  constexpr Digit() = default;
  constexpr explicit Digit(unsigned v) : v_(static_cast<std::uint8_t>(v & 3u)) {}

  constexpr unsigned value() const { return v_; }
  constexpr unsigned lo() const { return v_ & 1u; }
  constexpr unsigned hi() const { return v_ >> 1u; }

  constexpr bool operator==(const Digit&) const = default;

 private:
  std::uint8_t v_ = 0;
};

/// Truth tables of the two single-bit LUTs that realize the multiply-
/// accumulate c = (a*b + s) mod 4.
///
/// l0 produces the low output bit from the three low input bits,
/// indexed by (a_lo << 2 | b_lo << 1 | s_lo).
/// l1 produces the high output bit from all six input bits,
/// indexed by (a << 4 | b << 2 | s).
struct MaTables {
  std::array<std::uint8_t, 8> l0;
  std::array<std::uint8_t, 64> l1;

  bool operator==(const MaTables&) const = default;
};

/// The frozen reference tables. On first use they are checked against
/// derive_ma_tables(); a mismatch throws std::logic_error.
const MaTables& ma_tables();

/// The same tables rebuilt from the bit-sliced boolean form
///   p0 = a0 & b0,  p1 = (a1 & b0) ^ (a0 & b1),
///   c0 = p0 ^ s0,  c1 = p1 ^ s1 ^ (p0 & s0).
MaTables derive_ma_tables();

/// Multiply-accumulate (a*b + s) mod 4, evaluated through the LUT pair.
Digit ma(Digit a, Digit b, Digit s);

}  // namespace z4
