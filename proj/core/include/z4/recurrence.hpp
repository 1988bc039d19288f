#pragma once

#include <cstdint>
#include <vector>

namespace z4 {

/// Linear recurrence u_n = a_{d-1} u_{n-1} + ... + a_0 u_{n-d} mod 2^s.
/// The order d is the coefficient count; all coefficients live in {0,1,2,3}.
struct RecurrenceSpec {
  std::vector<std::uint8_t> coeffs;  // a_0 .. a_{d-1}
  std::uint32_t s = 1;               // modulus exponent, sequence values mod 2^s

  std::size_t d() const { return coeffs.size(); }

  /// DomainError when d == 0, a coefficient is >= 4, s == 0 or s > 63.
  void validate() const;
};

}  // namespace z4
