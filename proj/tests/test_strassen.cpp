#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "z4/error.hpp"
#include "z4/strassen.hpp"

using z4::Matrix;
using z4::StrassenConfig;
using z4::StrassenStats;

namespace {

// Control: the plain eight-product block recursion, for the multiplication
// count comparison.
Matrix eight_way(const Matrix& a, const Matrix& b, std::size_t threshold,
                 std::uint64_t& products) {
  std::size_t k = a.rows();
  if (k <= threshold) {
    ++products;
    return z4::mul_naive(a, b);
  }
  std::size_t h = k / 2;
  auto quad = [&](const Matrix& m, std::size_t qi, std::size_t qj) {
    Matrix out(h, h);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j)
        out.set(i, j, m.get(qi * h + i, qj * h + j));
    return out;
  };
  Matrix c(k, k);
  for (std::size_t qi = 0; qi < 2; ++qi)
    for (std::size_t qj = 0; qj < 2; ++qj) {
      Matrix acc(h, h);
      for (std::size_t ql = 0; ql < 2; ++ql)
        acc = z4::add(acc, eight_way(quad(a, qi, ql), quad(b, ql, qj), threshold,
                                     products));
      for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j)
          c.set(qi * h + i, qj * h + j, acc.get(i, j));
    }
  return c;
}

}  // namespace

TEST_CASE("2x2 scalar case matches the worked example") {
  Matrix a(2, 2), b(2, 2);
  a.set(0, 0, z4::Digit(1));
  a.set(0, 1, z4::Digit(2));
  a.set(1, 0, z4::Digit(3));
  a.set(1, 1, z4::Digit(1));
  b.set(0, 0, z4::Digit(2));
  b.set(0, 1, z4::Digit(1));
  b.set(1, 0, z4::Digit(1));
  b.set(1, 1, z4::Digit(3));
  Matrix c = z4::mul_strassen(a, b, {1});
  CHECK(c == z4::mul_naive(a, b));
  CHECK(c.get(0, 0) == z4::Digit(0));
  CHECK(c.get(0, 1) == z4::Digit(3));
  CHECK(c.get(1, 0) == z4::Digit(3));
  CHECK(c.get(1, 1) == z4::Digit(2));
}

TEST_CASE("identity passes through at threshold 1") {
  std::mt19937_64 rng(51);
  Matrix a = oracle::random_matrix(rng, 16, 16);
  CHECK(z4::mul_strassen(a, Matrix::identity(16), {1}) == a);
}

TEST_CASE("oracle equivalence over random sizes and thresholds") {
  std::mt19937_64 rng(52);
  for (int rep = 0; rep < 24; ++rep) {
    std::size_t k = 1 + rng() % 128;
    Matrix a = oracle::random_matrix(rng, k, k);
    Matrix b = oracle::random_matrix(rng, k, k);
    Matrix expect = z4::mul_naive(a, b);
    Matrix previous;
    for (std::size_t threshold : {1u, 2u, 8u, 32u}) {
      CAPTURE(k);
      CAPTURE(threshold);
      Matrix c = z4::mul_strassen(a, b, {threshold});
      CHECK(c == expect);
      previous = c;  // result independent of threshold, always equal expect
    }
  }
}

TEST_CASE("64x64 at threshold 16 matches mul_naive") {
  std::mt19937_64 rng(53);
  Matrix a = oracle::random_matrix(rng, 64, 64);
  Matrix b = oracle::random_matrix(rng, 64, 64);
  CHECK(z4::mul_strassen(a, b, {16}) == z4::mul_naive(a, b));
}

TEST_CASE("seven products per level against eight for the naive recursion") {
  std::mt19937_64 rng(54);
  for (std::size_t levels : {1u, 2u, 3u}) {
    std::size_t threshold = 4;
    std::size_t k = threshold << levels;
    Matrix a = oracle::random_matrix(rng, k, k);
    Matrix b = oracle::random_matrix(rng, k, k);

    StrassenStats stats;
    Matrix c = z4::mul_strassen(a, b, {threshold}, &stats);
    std::uint64_t expect = 1;
    for (std::size_t l = 0; l < levels; ++l) expect *= 7;
    CHECK(stats.base_products == expect);

    std::uint64_t control = 0;
    Matrix c8 = eight_way(a, b, threshold, control);
    std::uint64_t expect8 = 1;
    for (std::size_t l = 0; l < levels; ++l) expect8 *= 8;
    CHECK(control == expect8);
    CHECK(c8 == c);
  }
}

TEST_CASE("at or below the threshold a single base product runs") {
  std::mt19937_64 rng(55);
  Matrix a = oracle::random_matrix(rng, 10, 10);
  Matrix b = oracle::random_matrix(rng, 10, 10);
  StrassenStats stats;
  CHECK(z4::mul_strassen(a, b, {16}, &stats) == z4::mul_naive(a, b));
  CHECK(stats.base_products == 1);
}

TEST_CASE("shape errors") {
  CHECK_THROWS_AS(z4::mul_strassen(Matrix(2, 3), Matrix(3, 2)), z4::DimensionError);
  CHECK_THROWS_AS(z4::mul_strassen(Matrix(2, 2), Matrix(3, 3)), z4::DimensionError);
  CHECK_THROWS_AS(z4::mul_strassen(Matrix(2, 2), Matrix(2, 2), {0}), z4::DomainError);
}
