#include "z4/gf2poly.hpp"

#include <algorithm>
#include <bit>

#include "z4/error.hpp"

namespace z4 {

namespace {
constexpr std::size_t kWordBits = 64;
}

void RecurrenceSpec::validate() const {
  if (coeffs.empty()) throw DomainError("recurrence: order d must be at least 1");
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] >= 4)
      throw DomainError("recurrence: coefficient a" + std::to_string(i) +
                        " = " + std::to_string(coeffs[i]) + " is outside 0..3");
  if (s == 0 || s > 63)
    throw DomainError("recurrence: modulus exponent s must be in 1..63");
}

void Gf2Poly::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

void Gf2Poly::flip(std::size_t i) {
  std::size_t w = i / kWordBits;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] ^= std::uint64_t{1} << (i % kWordBits);
}

Gf2Poly Gf2Poly::monomial(std::size_t e) {
  Gf2Poly p;
  p.flip(e);
  return p;
}

Gf2Poly Gf2Poly::from_coeffs(std::initializer_list<int> low_to_high) {
  Gf2Poly p;
  std::size_t i = 0;
  for (int c : low_to_high) {
    if (c & 1) p.flip(i);
    ++i;
  }
  p.trim();
  return p;
}

Gf2Poly Gf2Poly::from_bits(std::uint64_t bits) {
  Gf2Poly p;
  if (bits) p.words_.push_back(bits);
  return p;
}

std::size_t Gf2Poly::degree() const {
  if (is_zero()) throw DomainError("Gf2Poly: the zero polynomial has no degree");
  return (words_.size() - 1) * kWordBits +
         (kWordBits - 1 - static_cast<std::size_t>(std::countl_zero(words_.back())));
}

bool Gf2Poly::coeff(std::size_t i) const {
  std::size_t w = i / kWordBits;
  if (w >= words_.size()) return false;
  return (words_[w] >> (i % kWordBits)) & 1;
}

Gf2Poly Gf2Poly::operator+(const Gf2Poly& rhs) const {
  Gf2Poly out;
  out.words_.resize(std::max(words_.size(), rhs.words_.size()), 0);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w];
  for (std::size_t w = 0; w < rhs.words_.size(); ++w) out.words_[w] ^= rhs.words_[w];
  out.trim();
  return out;
}

Gf2Poly Gf2Poly::shifted_left(std::size_t e) const {
  if (is_zero() || e == 0) return *this;
  Gf2Poly out;
  std::size_t word_shift = e / kWordBits, bit_shift = e % kWordBits;
  out.words_.assign(words_.size() + word_shift + 1, 0);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    out.words_[w + word_shift] |= words_[w] << bit_shift;
    if (bit_shift != 0)
      out.words_[w + word_shift + 1] |= words_[w] >> (kWordBits - bit_shift);
  }
  out.trim();
  return out;
}

Gf2Poly Gf2Poly::operator*(const Gf2Poly& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  Gf2Poly out;
  out.words_.assign(words_.size() + rhs.words_.size(), 0);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      std::size_t b = static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      std::size_t shift = w * kWordBits + b;
      std::size_t ws = shift / kWordBits, bs = shift % kWordBits;
      for (std::size_t v = 0; v < rhs.words_.size(); ++v) {
        out.words_[v + ws] ^= rhs.words_[v] << bs;
        if (bs != 0) out.words_[v + ws + 1] ^= rhs.words_[v] >> (kWordBits - bs);
      }
    }
  }
  out.trim();
  return out;
}

std::string Gf2Poly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = degree() + 1; i-- > 0;) {
    if (!coeff(i)) continue;
    if (!s.empty()) s += '+';
    if (i == 0)
      s += '1';
    else if (i == 1)
      s += 'x';
    else
      s += "x^" + std::to_string(i);
  }
  return s;
}

Gf2DivRem divrem(const Gf2Poly& a, const Gf2Poly& b) {
  if (b.is_zero()) throw DomainError("divrem: division by the zero polynomial");
  Gf2DivRem out;
  out.remainder = a;
  if (a.is_zero()) return out;
  std::size_t db = b.degree();
  while (!out.remainder.is_zero() && out.remainder.degree() >= db) {
    std::size_t shift = out.remainder.degree() - db;
    out.quotient = out.quotient + Gf2Poly::monomial(shift);
    out.remainder = out.remainder + b.shifted_left(shift);
  }
  return out;
}

Gf2Poly gf2_gcd(Gf2Poly a, Gf2Poly b) {
  while (!b.is_zero()) {
    Gf2Poly r = divrem(a, b).remainder;
    a = b;
    b = r;
  }
  return a;
}

Gf2Poly mulmod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) {
  return divrem(a * b, m).remainder;
}

namespace {

// x^(2^count) mod m, starting from `from` = x^(2^k) mod m.
Gf2Poly repeated_square(Gf2Poly from, std::size_t count, const Gf2Poly& m) {
  for (std::size_t i = 0; i < count; ++i) from = mulmod(from, from, m);
  return from;
}

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_irreducible(const Gf2Poly& p) {
  if (p.is_zero() || p.degree() == 0)
    throw DomainError("is_irreducible: argument must be nonconstant");
  std::size_t n = p.degree();
  Gf2Poly x_mod = divrem(Gf2Poly::x(), p).remainder;
  // Rabin: x^(2^n) = x (mod p), and for every prime q | n the polynomial
  // x^(2^(n/q)) - x must be coprime with p.
  for (std::size_t q : prime_factors(n)) {
    Gf2Poly frob = repeated_square(x_mod, n / q, p);
    if (gf2_gcd(frob + x_mod, p).degree() != 0) return false;
  }
  return repeated_square(x_mod, n, p) == x_mod;
}

std::uint64_t order(const Gf2Poly& p) {
  if (p.is_zero() || p.degree() == 0)
    throw DomainError("order: argument must be nonconstant");
  if (p == Gf2Poly::x()) throw DomainError("order: x has no multiplicative order");
  if (p.degree() > kOrderDegreeCap)
    throw DomainError("order: degree above the cap of " + std::to_string(kOrderDegreeCap));
  if (!is_irreducible(p)) throw DomainError("order: argument must be irreducible");
  Gf2Poly r = divrem(Gf2Poly::x(), p).remainder;
  Gf2Poly one = Gf2Poly::one();
  std::uint64_t e = 1;
  while (r != one) {
    r = mulmod(r, Gf2Poly::x(), p);
    ++e;
  }
  return e;
}

Gf2Poly char_poly_mod2(const RecurrenceSpec& spec) {
  spec.validate();
  Gf2Poly p = Gf2Poly::monomial(spec.d());
  for (std::size_t i = 0; i < spec.d(); ++i)
    if (spec.coeffs[i] & 1) p = p + Gf2Poly::monomial(i);
  return p;
}

ConditionReport check_condition(const RecurrenceSpec& spec) {
  spec.validate();
  if (spec.d() < 3)
    throw DomainError("check_condition: order d must be at least 3");
  ConditionReport report;
  report.char_poly = char_poly_mod2(spec);
  // (x-1)^2 = x^2 + 1 over GF(2)
  Gf2Poly square = Gf2Poly::from_coeffs({1, 0, 1});
  Gf2DivRem dr = divrem(report.char_poly, square);
  if (dr.remainder.is_zero() && is_irreducible(dr.quotient)) {
    report.admissible = true;
    report.factor = dr.quotient;
  }
  return report;
}

}  // namespace z4
