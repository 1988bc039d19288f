#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "z4/recurrence.hpp"

namespace z4 {

/// Polynomial over GF(2). Coefficient of x^i is bit i of the word array.
/// The representation is canonical: no words beyond the leading one, and
/// the zero polynomial has no degree at all (is_zero() instead of a -inf
/// sentinel leaking into arithmetic).
class Gf2Poly {
 public:
  Gf2Poly() = default;  // zero polynomial

  static Gf2Poly zero() { return {}; }
  static Gf2Poly one() { return monomial(0); }
  static Gf2Poly x() { return monomial(1); }
  static Gf2Poly monomial(std::size_t e);
  /// Low-to-high coefficient bits: {1,1,1} is x^2+x+1.
  static Gf2Poly from_coeffs(std::initializer_list<int> low_to_high);
  /// Bit i of `bits` is the coefficient of x^i.
  static Gf2Poly from_bits(std::uint64_t bits);

  bool is_zero() const { return words_.empty(); }
  /// Degree of a nonzero polynomial; DomainError on the zero polynomial.
  std::size_t degree() const;
  bool coeff(std::size_t i) const;

  Gf2Poly operator+(const Gf2Poly& rhs) const;  // XOR; doubles as subtraction
  Gf2Poly operator*(const Gf2Poly& rhs) const;
  Gf2Poly shifted_left(std::size_t e) const;    // * x^e

  bool operator==(const Gf2Poly&) const = default;

  /// "x^4+x^3+x+1", "1", "0".
  std::string to_string() const;

 private:
  void trim();
  void flip(std::size_t i);

  std::vector<std::uint64_t> words_;  // empty iff zero polynomial
};

struct Gf2DivRem {
  Gf2Poly quotient;
  Gf2Poly remainder;
};

/// Long division: a = q*b + r with deg r < deg b. DomainError when b = 0.
Gf2DivRem divrem(const Gf2Poly& a, const Gf2Poly& b);

Gf2Poly gf2_gcd(Gf2Poly a, Gf2Poly b);

/// a*b reduced mod m (m nonconstant).
Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m);

/// Rabin irreducibility test; agrees with exhaustive trial division.
/// DomainError on constants.
bool is_irreducible(const Gf2Poly& p);

/// Smallest e >= 1 with x^e = 1 (mod p). Requires p irreducible, p != x and
/// deg p <= 24; larger degrees are refused (searching the order means
/// walking up to 2^deg - 1 states).
std::uint64_t order(const Gf2Poly& p);

inline constexpr std::size_t kOrderDegreeCap = 24;

/// Characteristic polynomial of the recurrence, reduced mod 2:
/// x^d + sum (a_i mod 2) x^i. The subtraction signs vanish mod 2.
Gf2Poly char_poly_mod2(const RecurrenceSpec& spec);

struct ConditionReport {
  bool admissible = false;
  std::optional<Gf2Poly> factor;  // P with char_poly = (x+1)^2 P, when admissible
  Gf2Poly char_poly;
};

/// Tests whether the characteristic polynomial mod 2 factors as
/// (x+1)^2 * P with P irreducible. Requires d >= 3.
ConditionReport check_condition(const RecurrenceSpec& spec);

}  // namespace z4
