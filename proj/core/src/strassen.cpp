#include "z4/strassen.hpp"

#include "z4/error.hpp"

namespace z4 {

namespace {

Matrix quadrant(const Matrix& m, std::size_t qi, std::size_t qj) {
  std::size_t h = m.rows() / 2;
  Matrix out(h, h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      out.set_unchecked(i, j, m.get_unchecked(qi * h + i, qj * h + j));
  return out;
}

void place(Matrix& dst, const Matrix& q, std::size_t qi, std::size_t qj) {
  std::size_t h = q.rows();
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j)
      dst.set_unchecked(qi * h + i, qj * h + j, q.get_unchecked(i, j));
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t threshold,
                StrassenStats* stats) {
  std::size_t k = a.rows();
  if (k <= threshold) {
    if (stats) ++stats->base_products;
    return mul_naive(a, b);
  }

  Matrix a11 = quadrant(a, 0, 0), a12 = quadrant(a, 0, 1);
  Matrix a21 = quadrant(a, 1, 0), a22 = quadrant(a, 1, 1);
  Matrix b11 = quadrant(b, 0, 0), b12 = quadrant(b, 0, 1);
  Matrix b21 = quadrant(b, 1, 0), b22 = quadrant(b, 1, 1);

  // Scratch operands reused across the seven products; the additions are
  // the part whose memory traffic matters.
  Matrix t1, t2;

  detail::sub_into(t1, b12, b22);
  Matrix d1 = multiply(a11, t1, threshold, stats);
  detail::add_into(t1, a11, a12);
  Matrix d2 = multiply(t1, b22, threshold, stats);
  detail::add_into(t1, a21, a22);
  Matrix d3 = multiply(t1, b11, threshold, stats);
  detail::sub_into(t1, b21, b11);
  Matrix d4 = multiply(a22, t1, threshold, stats);
  detail::add_into(t1, a11, a22);
  detail::add_into(t2, b11, b22);
  Matrix d5 = multiply(t1, t2, threshold, stats);
  detail::sub_into(t1, a12, a22);
  detail::add_into(t2, b21, b22);
  Matrix d6 = multiply(t1, t2, threshold, stats);
  detail::sub_into(t1, a11, a21);
  detail::add_into(t2, b11, b12);
  Matrix d7 = multiply(t1, t2, threshold, stats);

  Matrix c(k, k);
  detail::add_into(t1, d4, d5);
  detail::add_into(t1, t1, d6);
  detail::sub_into(t1, t1, d2);  // -D2 + D4 + D5 + D6
  place(c, t1, 0, 0);
  detail::add_into(t1, d1, d2);  // D1 + D2
  place(c, t1, 0, 1);
  detail::add_into(t1, d3, d4);  // D3 + D4
  place(c, t1, 1, 0);
  detail::add_into(t1, d1, d5);
  detail::sub_into(t1, t1, d3);
  detail::sub_into(t1, t1, d7);  // D1 - D3 + D5 - D7
  place(c, t1, 1, 1);
  return c;
}

}  // namespace

void StrassenConfig::validate() const {
  if (threshold == 0) throw DomainError("StrassenConfig: threshold must be at least 1");
}

Matrix mul_strassen(const Matrix& a, const Matrix& b, const StrassenConfig& cfg,
                    StrassenStats* stats) {
  cfg.validate();
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw DimensionError("mul_strassen: operands must be square and equal-sized");
  std::size_t k = a.rows();
  if (k == 0) return Matrix();
  if (k <= cfg.threshold) return multiply(a, b, cfg.threshold, stats);
  std::size_t padded = cfg.threshold;
  while (padded < k) padded *= 2;
  if (padded == k)
    return multiply(a, b, cfg.threshold, stats);
  Matrix c = multiply(embed(a, padded, padded), embed(b, padded, padded),
                      cfg.threshold, stats);
  return crop(c, k, k);
}

}  // namespace z4
