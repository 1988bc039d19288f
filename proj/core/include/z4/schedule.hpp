#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "z4/ma.hpp"

namespace z4 {

/// Parameters of the overlap schedule. The design holds z row-stores plus
/// two column-stores; each container takes `delta` cycles to fill from
/// memory and feeds one `block` x `block` tile computation of `depth`
/// cycles per drained row/column group.
struct ScheduleParams {
  std::uint64_t n = 28;      // chunk width, elements per activation
  std::uint64_t depth = 32;  // container depth, cycles per compute iteration
  std::uint64_t k = 896;     // matrix edge, elements
  std::uint64_t z = 10;      // row-store count
  std::uint64_t delta = 140; // cycles to fill one container
  std::uint64_t block = 20;  // tile edge, rows/columns per container
};

/// Cost-model quantities; fill counters and cycle totals are produced by
/// the step simulation only.
struct ScheduleReport {
  std::uint64_t kappa = 0;         // matrix edge in tiles
  std::uint64_t k_naive = 0;       // container fills, re-reading B per row band
  std::uint64_t k_improved = 0;    // container fills with the overlap schedule
  std::uint64_t phi_naive = 0;     // memory cycles, naive
  std::uint64_t phi_improved = 0;  // memory cycles, overlapped
  std::uint64_t gamma = 0;         // compute cycles = depth * kappa^2
  std::int64_t memory_bound_margin = 0;  // gamma - phi_improved
  bool feasible = false;
  std::string infeasible_reason;

  // Simulation results.
  std::optional<std::uint64_t> simulated_cycles;
  std::uint64_t row_fills = 0;
  std::uint64_t col_fills = 0;
  std::uint64_t data_ready_violations = 0;
};

/// Closed-form model: kappa = ceil(k/block), K_naive = kappa^2 + kappa,
/// K_improved = kappa^2/(z-1) + kappa, Phi = (K + kappa)*delta,
/// Gamma = depth * kappa^2. Total function: invalid parameters (including
/// (z-1) not dividing kappa) come back with feasible = false and a reason,
/// never an exception.
ScheduleReport cost_model(const ScheduleParams& p);

/// One simulated macro-step: z-1 compute iterations overlapped with the
/// loads and write-backs issued during them. Occupancy bitmaps are
/// sampled at the step start; bit i set means store i holds a complete
/// row/column group (the clear bit is the store currently loading).
struct TraceStep {
  std::uint64_t step = 0;
  std::uint64_t compute = 0;  // cycles
  std::uint64_t memory = 0;   // cycles
  std::uint64_t rowstore = 0; // occupancy bitmap, z bits
  std::uint64_t colstore = 0; // occupancy bitmap, 2 bits
};

/// Steps the schedule through kappa^2/(z-1) macro-steps in steady state:
/// the computation window slides one row group every kappa/(z-1) steps
/// while one column group per step and (z-1)*block/kappa rows per step
/// stream into the spare stores, wrapping circularly so each multiplication
/// reads A exactly once (kappa row fills) and B kappa/(z-1) times. A
/// compute iteration whose operands are not resident counts as a
/// data-ready violation. Total cycles are the per-step max of compute and
/// memory time; with feasible parameters the total equals gamma.
ScheduleReport simulate(const ScheduleParams& p,
                        std::vector<TraceStep>* trace = nullptr);

/// Test-data generator D_i = D_{i-1} + D_{i-2} + 2 D_{i-4} + D_{i-5} mod 4
/// from the seed D_0 = D_1 = D_2 = D_3 = 0, D_4 = 1.
class TestGen {
 public:
  TestGen() : ring_{{0, 0, 0, 0, 1}} {}
  explicit TestGen(const std::array<std::uint8_t, 5>& seed);

  /// Advances the recurrence and returns the new value.
  Digit next();
  void skip(std::uint64_t count);

 private:
  std::array<std::uint8_t, 5> ring_;  // last five values, ring_[pos_] oldest
  std::size_t pos_ = 0;
};

/// Staggered cross-check of the fast packed dot product (Subject) against
/// ten scalar reference units (Examiners) on rotating generator data:
/// per round p, the Subject's answer is compared with Examiner p, the
/// Subject takes over Examiner p+1's data and Examiner p-1 is reloaded.
/// Returns the number of mismatches; inject_fault corrupts the Subject's
/// answers to prove the harness notices. Requires width >= 1, rounds >= 10.
std::uint64_t staggered_selftest(std::size_t width, std::uint64_t rounds,
                                 bool inject_fault = false);

}  // namespace z4
