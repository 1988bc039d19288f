#include "z4/schedule.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "z4/error.hpp"
#include "z4/packed_vector.hpp"

namespace z4 {

namespace {

// Desk-scale caps keeping every cycle product inside 64 bits.
constexpr std::uint64_t kMaxKappa = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxCycleParam = std::uint64_t{1} << 20;
constexpr std::uint64_t kMaxStores = 64;  // occupancy bitmaps are one word

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

std::string first_problem(const ScheduleParams& p, std::uint64_t kappa) {
  if (p.n == 0 || p.depth == 0 || p.k == 0 || p.delta == 0 || p.block == 0)
    return "all parameters must be positive";
  if (p.z < 2) return "z must be at least 2";
  if (p.z > kMaxStores) return "z exceeds the simulator's store limit";
  if (kappa > kMaxKappa || p.depth > kMaxCycleParam || p.delta > kMaxCycleParam)
    return "parameters beyond the model's supported range";
  if (p.n * p.depth < p.k)
    return "container capacity n*depth is below the matrix edge k";
  if (kappa % (p.z - 1) != 0)
    return "(z-1) does not divide kappa";
  return {};
}

}  // namespace

ScheduleReport cost_model(const ScheduleParams& p) {
  ScheduleReport r;
  if (p.block == 0) {
    r.feasible = false;
    r.infeasible_reason = "all parameters must be positive";
    return r;
  }
  std::uint64_t kappa = ceil_div(p.k, p.block);
  r.kappa = kappa;
  r.infeasible_reason = first_problem(p, kappa);
  if (r.infeasible_reason == "parameters beyond the model's supported range") {
    r.feasible = false;
    return r;  // products below would overflow
  }

  r.k_naive = kappa * kappa + kappa;
  std::uint64_t zm1 = p.z >= 2 ? p.z - 1 : 1;
  r.k_improved = ceil_div(kappa * kappa, zm1) + kappa;
  r.phi_naive = (r.k_naive + kappa) * p.delta;
  r.phi_improved = (r.k_improved + kappa) * p.delta;
  r.gamma = p.depth * kappa * kappa;
  r.memory_bound_margin =
      static_cast<std::int64_t>(r.gamma) - static_cast<std::int64_t>(r.phi_improved);

  if (r.infeasible_reason.empty() && r.gamma < r.phi_improved)
    r.infeasible_reason = "memory time exceeds compute time";
  r.feasible = r.infeasible_reason.empty();
  return r;
}

ScheduleReport simulate(const ScheduleParams& p, std::vector<TraceStep>* trace) {
  ScheduleReport r = cost_model(p);
  // Structural problems leave nothing sensible to step through; a merely
  // memory-bound schedule still runs and shows the stretched total.
  bool structural = !r.infeasible_reason.empty() &&
                    r.infeasible_reason != "memory time exceeds compute time";
  if (structural) return r;

  const std::uint64_t kappa = r.kappa;
  const std::uint64_t zm1 = p.z - 1;
  const std::uint64_t macro_steps = kappa * kappa / zm1;
  const std::uint64_t compute = zm1 * p.depth;
  if (macro_steps > (std::uint64_t{1} << 24)) {
    r.feasible = false;
    r.infeasible_reason = "too many macro-steps to simulate";
    return r;
  }

  // Steady-state residency: row groups (g .. g+z-2) mod kappa live in the
  // stores, one spare loads ahead, wrapping circularly; the loads issued in
  // the last steps of one multiplication are the prologue of the next, so
  // the per-run fill counts are exactly kappa row fills and macro_steps
  // column fills.
  std::deque<std::uint64_t> active;        // row groups, oldest first
  std::vector<char> resident(kappa, 0);
  std::vector<std::uint64_t> slot_of(kappa, 0);
  for (std::uint64_t g = 0; g < zm1; ++g) {
    active.push_back(g);
    resident[g] = 1;
    slot_of[g] = g;
  }
  std::uint64_t filling_slot = zm1;        // row store being loaded
  std::uint64_t activated = 0;             // stream groups made active so far

  std::uint64_t total = 0;
  std::uint64_t aux_prev = 0;              // row + write-back cycles issued
  if (trace) trace->reserve(macro_steps);

  for (std::uint64_t t = 0; t < macro_steps; ++t) {
    // Stream groups fully loaded by the end of step t-1 become active at
    // the step boundary, each displacing the oldest resident group.
    std::uint64_t completed = t * zm1 / kappa;
    while (activated < completed) {
      std::uint64_t group = (zm1 + activated) % kappa;
      std::uint64_t evicted = active.front();
      std::uint64_t freed = slot_of[evicted];
      active.pop_front();
      resident[evicted] = 0;
      active.push_back(group);
      resident[group] = 1;
      slot_of[group] = filling_slot;
      filling_slot = freed;
      ++activated;
    }

    // Every compute iteration of this step must find its operands resident.
    std::uint64_t base = t * zm1 / kappa;
    for (std::uint64_t j = 0; j < zm1; ++j) {
      std::uint64_t need = (base + j) % kappa;
      if (!resident[need]) ++r.data_ready_violations;
    }

    // Memory work issued during this step: one column-store fill plus the
    // uniform shares of row loading and result write-back.
    std::uint64_t aux_now = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(t + 1) * 2 * p.delta * zm1 / kappa);
    std::uint64_t memory = p.delta + (aux_now - aux_prev);
    aux_prev = aux_now;
    ++r.col_fills;

    if (trace) {
      std::uint64_t row_bitmap = (p.z >= 64 ? ~std::uint64_t{0}
                                            : (std::uint64_t{1} << p.z) - 1) &
                                 ~(std::uint64_t{1} << filling_slot);
      std::uint64_t col_bitmap = std::uint64_t{1} << (t & 1);
      trace->push_back({t, compute, memory, row_bitmap, col_bitmap});
    }
    total += std::max(compute, memory);
  }

  r.row_fills = macro_steps * zm1 / kappa;  // = kappa: matrix A read once
  r.simulated_cycles = total;
  if (r.data_ready_violations > 0) {
    r.feasible = false;
    r.infeasible_reason = "data-ready violation during simulation";
  }
  return r;
}

TestGen::TestGen(const std::array<std::uint8_t, 5>& seed) {
  for (std::size_t i = 0; i < 5; ++i) ring_[i] = seed[i] & 3;
}

Digit TestGen::next() {
  // ring_[pos_] is D_{i-5}; the newest value D_{i-1} sits at pos_+4.
  std::uint8_t d1 = ring_[(pos_ + 4) % 5];
  std::uint8_t d2 = ring_[(pos_ + 3) % 5];
  std::uint8_t d4 = ring_[(pos_ + 1) % 5];
  std::uint8_t d5 = ring_[pos_];
  std::uint8_t next = static_cast<std::uint8_t>((d1 + d2 + 2 * d4 + d5) & 3);
  ring_[pos_] = next;
  pos_ = (pos_ + 1) % 5;
  return Digit(next);
}

void TestGen::skip(std::uint64_t count) {
  for (std::uint64_t i = 0; i < count; ++i) next();
}

namespace {

PackedVector draw_vector(TestGen& gen, std::size_t width) {
  PackedVector v(width);
  for (std::size_t i = 0; i < width; ++i) v.set(i, gen.next());
  return v;
}

// Scalar reference path: fold of the LUT multiply-accumulate.
Digit reference_dot(const PackedVector& u, const PackedVector& v) {
  Digit acc(0);
  for (std::size_t i = 0; i < u.size(); ++i) acc = ma(u.get(i), v.get(i), acc);
  return acc;
}

}  // namespace

std::uint64_t staggered_selftest(std::size_t width, std::uint64_t rounds,
                                 bool inject_fault) {
  if (width < 1) throw DomainError("staggered_selftest: width must be at least 1");
  if (rounds < 10) throw DomainError("staggered_selftest: need at least 10 rounds");

  struct Examiner {
    PackedVector u, v;
    Digit answer;
  };

  TestGen gen;
  std::array<Examiner, 10> examiners;
  for (Examiner& e : examiners) {
    e.u = draw_vector(gen, width);
    e.v = draw_vector(gen, width);
    e.answer = reference_dot(e.u, e.v);
  }

  auto subject_dot = [&](const PackedVector& u, const PackedVector& v) {
    Digit d = dot(u, v);
    return inject_fault ? Digit(d.value() + 1) : d;
  };

  // Prime the Subject with Examiner 0's data so round 0 compares answers
  // to the same question.
  Digit subject_answer = subject_dot(examiners[0].u, examiners[0].v);

  std::uint64_t errors = 0;
  for (std::uint64_t i = 0; i < rounds; ++i) {
    std::size_t p = static_cast<std::size_t>(i % 10);
    if (subject_answer != examiners[p].answer) ++errors;
    const Examiner& successor = examiners[(p + 1) % 10];
    subject_answer = subject_dot(successor.u, successor.v);
    Examiner& refreshed = examiners[(p + 9) % 10];
    refreshed.u = draw_vector(gen, width);
    refreshed.v = draw_vector(gen, width);
    refreshed.answer = reference_dot(refreshed.u, refreshed.v);
  }
  return errors;
}

}  // namespace z4
