#pragma once

#include <cstdint>

#include "z4/matrix.hpp"

namespace z4 {

struct StrassenConfig {
  std::size_t threshold = 64;  // edge at or below which recursion stops

  void validate() const;  // DomainError unless threshold >= 1
};

struct StrassenStats {
  std::uint64_t base_products = 0;  // leaf multiplications performed
};

/// Strassen multiplication over Z4: seven half-size products per level,
/// subtraction exact in the ring. Operands are padded to the next
/// power-of-two multiple of cfg.threshold; padding is always by zeros.
/// Equals mul_naive on all inputs.
Matrix mul_strassen(const Matrix& a, const Matrix& b, const StrassenConfig& cfg = {},
                    StrassenStats* stats = nullptr);

}  // namespace z4
