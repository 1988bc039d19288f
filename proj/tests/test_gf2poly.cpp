#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "z4/error.hpp"
#include "z4/gf2poly.hpp"

using z4::Gf2Poly;
using z4::RecurrenceSpec;

namespace {

Gf2Poly random_poly(std::mt19937_64& rng, std::size_t max_deg) {
  std::uint64_t mask = (std::uint64_t{1} << (max_deg + 1)) - 1;
  return Gf2Poly::from_bits(rng() & mask);
}

}  // namespace

TEST_CASE("construction and degree") {
  CHECK(Gf2Poly::zero().is_zero());
  CHECK_THROWS_AS(Gf2Poly::zero().degree(), z4::DomainError);
  CHECK(Gf2Poly::one().degree() == 0);
  CHECK(Gf2Poly::x().degree() == 1);
  Gf2Poly p = Gf2Poly::from_coeffs({1, 1, 0, 0, 1});  // x^4 + x + 1
  CHECK(p.degree() == 4);
  CHECK(p.coeff(0));
  CHECK(p.coeff(1));
  CHECK(!p.coeff(2));
  CHECK(p.to_string() == "x^4+x+1");
  CHECK(Gf2Poly::zero().to_string() == "0");
  CHECK(Gf2Poly::monomial(70).degree() == 70);
}

TEST_CASE("char_poly_mod2 drops signs and reduces coefficients") {
  SUBCASE("a = (1,1,0,1), d = 4") {
    RecurrenceSpec spec{{1, 1, 0, 1}, 1};
    CHECK(z4::char_poly_mod2(spec) == Gf2Poly::from_coeffs({1, 1, 0, 1, 1}));
  }
  SUBCASE("all-zero coefficients give x^d") {
    RecurrenceSpec spec{{0, 0, 0, 0, 0}, 1};
    CHECK(z4::char_poly_mod2(spec) == Gf2Poly::monomial(5));
  }
  SUBCASE("coefficient 2 vanishes mod 2") {
    RecurrenceSpec spec{{2, 2}, 1};
    CHECK(z4::char_poly_mod2(spec) == Gf2Poly::monomial(2));
  }
}

TEST_CASE("divrem long division") {
  SUBCASE("worked example") {
    Gf2Poly a = Gf2Poly::from_coeffs({1, 1, 0, 1, 1});  // x^4+x^3+x+1
    Gf2Poly b = Gf2Poly::from_coeffs({1, 0, 1});        // x^2+1
    auto [q, r] = z4::divrem(a, b);
    CHECK(q == Gf2Poly::from_coeffs({1, 1, 1}));
    CHECK(r.is_zero());
    CHECK(q * b == a);
  }
  SUBCASE("a / a = 1") {
    Gf2Poly a = Gf2Poly::from_coeffs({1, 0, 1, 1});
    auto [q, r] = z4::divrem(a, a);
    CHECK(q == Gf2Poly::one());
    CHECK(r.is_zero());
  }
  SUBCASE("smaller dividend passes through") {
    Gf2Poly a = Gf2Poly::from_coeffs({1, 0, 1});
    Gf2Poly b = Gf2Poly::from_coeffs({1, 1, 0, 1});
    auto [q, r] = z4::divrem(a, b);
    CHECK(q.is_zero());
    CHECK(r == a);
  }
  SUBCASE("dividing by zero is refused") {
    CHECK_THROWS_AS(z4::divrem(Gf2Poly::one(), Gf2Poly::zero()), z4::DomainError);
  }
  SUBCASE("round trip on random pairs") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 2000; ++i) {
      Gf2Poly a = random_poly(rng, 40);
      Gf2Poly b = random_poly(rng, 20);
      if (b.is_zero()) continue;
      auto [q, r] = z4::divrem(a, b);
      CHECK(q * b + r == a);
      if (!r.is_zero()) CHECK(r.degree() < b.degree());
    }
  }
}

TEST_CASE("is_irreducible") {
  CHECK(z4::is_irreducible(Gf2Poly::from_coeffs({1, 1, 1})));  // x^2+x+1
  CHECK(!z4::is_irreducible(Gf2Poly::from_coeffs({1, 0, 1})));  // (x+1)^2
  CHECK(z4::is_irreducible(Gf2Poly::x()));
  CHECK(z4::is_irreducible(Gf2Poly::from_coeffs({1, 1})));
  CHECK_THROWS_AS(z4::is_irreducible(Gf2Poly::one()), z4::DomainError);
  CHECK_THROWS_AS(z4::is_irreducible(Gf2Poly::zero()), z4::DomainError);

  SUBCASE("agrees with trial division through degree 10") {
    for (std::uint64_t bits = 2; bits < (std::uint64_t{1} << 11); ++bits) {
      Gf2Poly p = Gf2Poly::from_bits(bits);
      CAPTURE(bits);
      CHECK(z4::is_irreducible(p) == oracle::irreducible_by_trial_division(p));
    }
  }
}

TEST_CASE("order of small irreducibles") {
  CHECK(z4::order(Gf2Poly::from_coeffs({1, 1, 1})) == 3);        // x^2+x+1
  CHECK(z4::order(Gf2Poly::from_coeffs({1, 1})) == 1);           // x+1
  CHECK(z4::order(Gf2Poly::from_coeffs({1, 1, 0, 1})) == 7);     // x^3+x+1
  CHECK_THROWS_AS(z4::order(Gf2Poly::x()), z4::DomainError);
  CHECK_THROWS_AS(z4::order(Gf2Poly::from_coeffs({1, 0, 1})), z4::DomainError);
  CHECK_THROWS_AS(z4::order(Gf2Poly::monomial(25) + Gf2Poly::one()), z4::DomainError);

  SUBCASE("order divides 2^deg - 1 for every irreducible through degree 12") {
    for (std::uint64_t bits = 2; bits < (std::uint64_t{1} << 13); ++bits) {
      Gf2Poly p = Gf2Poly::from_bits(bits);
      if (p == Gf2Poly::x() || !z4::is_irreducible(p)) continue;
      std::uint64_t group = (std::uint64_t{1} << p.degree()) - 1;
      CHECK(group % z4::order(p) == 0);
    }
  }
}

TEST_CASE("check_condition") {
  SUBCASE("the d=4 reference spec is admissible with P = x^2+x+1") {
    RecurrenceSpec spec{{1, 1, 0, 1}, 1};
    auto report = z4::check_condition(spec);
    CHECK(report.admissible);
    REQUIRE(report.factor.has_value());
    CHECK(*report.factor == Gf2Poly::from_coeffs({1, 1, 1}));
    CHECK(z4::order(*report.factor) == 3);
  }
  SUBCASE("x^d alone is not divisible by (x+1)^2") {
    RecurrenceSpec spec{{0, 0, 0, 0}, 1};
    CHECK(!z4::check_condition(spec).admissible);
  }
  SUBCASE("(x+1)^3 is admissible with P = x+1") {
    RecurrenceSpec spec{{1, 1, 1}, 1};
    auto report = z4::check_condition(spec);
    CHECK(report.char_poly == Gf2Poly::from_coeffs({1, 1, 1, 1}));
    CHECK(report.admissible);
    REQUIRE(report.factor.has_value());
    CHECK(*report.factor == Gf2Poly::from_coeffs({1, 1}));
  }
  SUBCASE("order below 3 is refused") {
    RecurrenceSpec spec{{1, 1}, 1};
    CHECK_THROWS_AS(z4::check_condition(spec), z4::DomainError);
  }
  SUBCASE("invariant under adding 2 to any coefficient") {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 200; ++rep) {
      std::size_t d = 3 + rng() % 6;
      RecurrenceSpec spec;
      spec.s = 1;
      for (std::size_t i = 0; i < d; ++i)
        spec.coeffs.push_back(static_cast<std::uint8_t>(rng() & 3));
      bool base = z4::check_condition(spec).admissible;
      RecurrenceSpec bumped = spec;
      std::size_t index = rng() % d;
      bumped.coeffs[index] = static_cast<std::uint8_t>((bumped.coeffs[index] + 2) & 3);
      CHECK(z4::check_condition(bumped).admissible == base);
    }
  }
}
