#include "z4/ma.hpp"

#include <stdexcept>

namespace z4 {

namespace {

// Reference LUT contents, row order (a,b) ascending, column order s ascending.
constexpr MaTables kReferenceTables = {
    // l0, indexed by (a_lo << 2 | b_lo << 1 | s_lo)
    {{
        0, 1,  // (0,0)
        0, 1,  // (0,1)
        0, 1,  // (1,0)
        1, 0,  // (1,1)
    }},
    // l1, indexed by (a << 4 | b << 2 | s)
    {{
        0, 0, 1, 1,  // (0,0)
        0, 0, 1, 1,  // (0,1)
        0, 0, 1, 1,  // (0,2)
        0, 0, 1, 1,  // (0,3)
        0, 0, 1, 1,  // (1,0)
        0, 1, 1, 0,  // (1,1)
        1, 1, 0, 0,  // (1,2)
        1, 0, 0, 1,  // (1,3)
        0, 0, 1, 1,  // (2,0)
        1, 1, 0, 0,  // (2,1)
        0, 0, 1, 1,  // (2,2)
        1, 1, 0, 0,  // (2,3)
        0, 0, 1, 1,  // (3,0)
        1, 0, 0, 1,  // (3,1)
        1, 1, 0, 0,  // (3,2)
        0, 1, 1, 0,  // (3,3)
    }},
};

}  // namespace

MaTables derive_ma_tables() {
  MaTables t{};
  for (unsigned a0 = 0; a0 < 2; ++a0)
    for (unsigned b0 = 0; b0 < 2; ++b0)
      for (unsigned s0 = 0; s0 < 2; ++s0)
        t.l0[a0 << 2 | b0 << 1 | s0] = static_cast<std::uint8_t>((a0 & b0) ^ s0);
  for (unsigned a = 0; a < 4; ++a)
    for (unsigned b = 0; b < 4; ++b)
      for (unsigned s = 0; s < 4; ++s) {
        unsigned a0 = a & 1, a1 = a >> 1, b0 = b & 1, b1 = b >> 1;
        unsigned p0 = a0 & b0;
        unsigned p1 = (a1 & b0) ^ (a0 & b1);
        unsigned c1 = p1 ^ (s >> 1) ^ (p0 & (s & 1));
        t.l1[a << 4 | b << 2 | s] = static_cast<std::uint8_t>(c1);
      }
  return t;
}

const MaTables& ma_tables() {
  static const MaTables tables = [] {
    if (derive_ma_tables() != kReferenceTables)
      throw std::logic_error("ma_tables: stored LUTs disagree with the bit-sliced form");
    return kReferenceTables;
  }();
  return tables;
}

Digit ma(Digit a, Digit b, Digit s) {
  const MaTables& t = ma_tables();
  unsigned lo = t.l0[a.lo() << 2 | b.lo() << 1 | s.lo()];
  unsigned hi = t.l1[a.value() << 4 | b.value() << 2 | s.value()];
  return Digit(hi << 1 | lo);
}

}  // namespace z4
