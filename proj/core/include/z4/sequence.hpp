#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "z4/gf2poly.hpp"
#include "z4/matrix.hpp"
#include "z4/recurrence.hpp"

namespace z4 {

/// d x d companion matrix: ones on the superdiagonal of rows 0..d-2, the
/// coefficients a_0..a_{d-1} across the last row.
Matrix companion(const RecurrenceSpec& spec);

/// The four coefficient variants that compete for uniform distribution:
/// base, base with a0+2, base with a1+2, base with both (additions mod 4).
using CandidateSet = std::array<RecurrenceSpec, 4>;

/// Requires d >= 2 (a1 must exist).
CandidateSet candidates(const RecurrenceSpec& spec);

struct SelectionReport {
  CandidateSet candidates;
  BigUint exponent;                    // 2^(d+1) - 2
  std::array<bool, 4> identity_test;   // true iff companion^exponent = I mod 4
  std::vector<std::size_t> survivors;  // candidates failing the identity test
  bool unique = false;                 // exactly one survivor
  std::optional<bool> admissible;      // check_condition verdict, when d >= 3
};

/// Runs the identity test companion^(2^(d+1)-2) = I mod 4 on all four
/// candidates. The test is independent of spec.s. A spec that fails the
/// admissibility condition is reported, not refused.
SelectionReport select_uniform(const RecurrenceSpec& spec);

/// Emits u_d .. u_{d+count-1} from the initial values u_0 .. u_{d-1},
/// all mod 2^s. init must have exactly d entries below 2^s.
std::vector<std::uint64_t> generate(const RecurrenceSpec& spec,
                                    std::span<const std::uint64_t> init,
                                    std::size_t count);

struct EmpiricalReport {
  std::uint64_t period = 0;            // cycle length of the state sequence
  std::uint64_t tail = 0;              // steps before the cycle is entered
  std::vector<std::uint64_t> counts;   // per residue mod 2^s, over one period
  bool uniform = false;                // all residues equally frequent
  bool degenerate = false;             // the cycle is the all-zero fixed point
};

/// Walks the state sequence until it cycles, then tallies one full period
/// of emitted values. Desk-scale only: requires s <= 4 and d <= 8, and
/// refuses searches past an internal step budget.
EmpiricalReport empirical_check(const RecurrenceSpec& spec,
                                std::span<const std::uint64_t> init);

}  // namespace z4
