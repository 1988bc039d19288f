#include "z4/sequence.hpp"

#include <algorithm>
#include <string>

#include "z4/error.hpp"

namespace z4 {

namespace {

constexpr std::uint32_t kEmpiricalMaxS = 4;
constexpr std::size_t kEmpiricalMaxD = 8;
constexpr std::uint64_t kStepBudget = std::uint64_t{1} << 26;

void check_init(const RecurrenceSpec& spec, std::span<const std::uint64_t> init) {
  if (init.size() != spec.d())
    throw DomainError("init has " + std::to_string(init.size()) +
                      " values, expected d = " + std::to_string(spec.d()));
  std::uint64_t bound = std::uint64_t{1} << spec.s;
  for (std::uint64_t v : init)
    if (v >= bound)
      throw DomainError("init value " + std::to_string(v) + " is not below 2^s");
}

// One recurrence step on a dense state window (u_{n-d} .. u_{n-1}).
std::uint64_t step_value(const RecurrenceSpec& spec,
                         std::span<const std::uint64_t> state, std::uint64_t mask) {
  std::uint64_t next = 0;
  for (std::size_t i = 0; i < spec.d(); ++i)
    next += spec.coeffs[i] * state[i];
  return next & mask;
}

}  // namespace

Matrix companion(const RecurrenceSpec& spec) {
  spec.validate();
  std::size_t d = spec.d();
  Matrix m(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i) m.set_unchecked(i, i + 1, Digit(1));
  for (std::size_t j = 0; j < d; ++j)
    m.set_unchecked(d - 1, j, Digit(spec.coeffs[j]));
  return m;
}

CandidateSet candidates(const RecurrenceSpec& spec) {
  spec.validate();
  if (spec.d() < 2)
    throw DomainError("candidates: order d must be at least 2");
  CandidateSet set = {spec, spec, spec, spec};
  set[1].coeffs[0] = static_cast<std::uint8_t>((set[1].coeffs[0] + 2) & 3);
  set[2].coeffs[1] = static_cast<std::uint8_t>((set[2].coeffs[1] + 2) & 3);
  set[3].coeffs[0] = static_cast<std::uint8_t>((set[3].coeffs[0] + 2) & 3);
  set[3].coeffs[1] = static_cast<std::uint8_t>((set[3].coeffs[1] + 2) & 3);
  return set;
}

SelectionReport select_uniform(const RecurrenceSpec& spec) {
  SelectionReport report;
  report.candidates = candidates(spec);
  report.exponent = (BigUint(1) << (spec.d() + 1)) - 2;
  if (spec.d() >= 3) report.admissible = check_condition(spec).admissible;

  Matrix id = Matrix::identity(spec.d());
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    Matrix m = matpow(companion(report.candidates[i]), report.exponent);
    report.identity_test[i] = (m == id);
    if (!report.identity_test[i]) report.survivors.push_back(i);
  }
  report.unique = report.survivors.size() == 1;
  return report;
}

std::vector<std::uint64_t> generate(const RecurrenceSpec& spec,
                                    std::span<const std::uint64_t> init,
                                    std::size_t count) {
  spec.validate();
  check_init(spec, init);
  std::uint64_t mask = (std::uint64_t{1} << spec.s) - 1;
  std::vector<std::uint64_t> window(init.begin(), init.end());
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t next = step_value(spec, window, mask);
    out.push_back(next);
    std::rotate(window.begin(), window.begin() + 1, window.end());
    window.back() = next;
  }
  return out;
}

namespace {

// State packed s bits per component, oldest value in the low bits.
class StateWalker {
 public:
  StateWalker(const RecurrenceSpec& spec)
      : spec_(spec), mask_((std::uint64_t{1} << spec.s) - 1) {}

  std::uint64_t pack(std::span<const std::uint64_t> init) const {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < spec_.d(); ++i) key |= init[i] << (i * spec_.s);
    return key;
  }

  std::uint64_t next(std::uint64_t key) const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < spec_.d(); ++i)
      acc += spec_.coeffs[i] * ((key >> (i * spec_.s)) & mask_);
    acc &= mask_;
    return (key >> spec_.s) | (acc << ((spec_.d() - 1) * spec_.s));
  }

  std::uint64_t emitted(std::uint64_t key) const {
    return (key >> ((spec_.d() - 1) * spec_.s)) & mask_;
  }

 private:
  const RecurrenceSpec& spec_;
  std::uint64_t mask_;
};

[[noreturn]] void budget_exhausted() {
  throw DomainError("empirical_check: period search exceeded the step budget");
}

}  // namespace

EmpiricalReport empirical_check(const RecurrenceSpec& spec,
                                std::span<const std::uint64_t> init) {
  spec.validate();
  check_init(spec, init);
  if (spec.s > kEmpiricalMaxS || spec.d() > kEmpiricalMaxD)
    throw DomainError("empirical_check: state space beyond desk scale (need s <= " +
                      std::to_string(kEmpiricalMaxS) + ", d <= " +
                      std::to_string(kEmpiricalMaxD) + ")");

  StateWalker walker(spec);
  std::uint64_t start = walker.pack(init);

  EmpiricalReport report;
  std::uint64_t lambda = 0, mu = 0;
  if (spec.coeffs[0] & 1) {
    // a0 odd: the state map is invertible, so the walk is a pure cycle and
    // the first return to the initial state gives the period.
    std::uint64_t state = start, steps = 0;
    do {
      state = walker.next(state);
      if (++steps > kStepBudget) budget_exhausted();
    } while (state != start);
    lambda = steps;
  } else {
    // a0 even: the trajectory may have a tail before the cycle; Brent's
    // algorithm finds the cycle length, then the tail.
    std::uint64_t power = 1, span = 1;
    std::uint64_t tortoise = start, hare = walker.next(start);
    std::uint64_t steps = 1;
    while (tortoise != hare) {
      if (power == span) {
        tortoise = hare;
        power *= 2;
        span = 0;
      }
      hare = walker.next(hare);
      ++span;
      if (++steps > kStepBudget) budget_exhausted();
    }
    lambda = span;
    tortoise = start;
    hare = start;
    for (std::uint64_t i = 0; i < lambda; ++i) hare = walker.next(hare);
    while (tortoise != hare) {
      tortoise = walker.next(tortoise);
      hare = walker.next(hare);
      ++mu;
      if (mu > kStepBudget) budget_exhausted();
    }
  }

  report.period = lambda;
  report.tail = mu;
  report.counts.assign(std::size_t{1} << spec.s, 0);

  std::uint64_t cycle_start = start;
  for (std::uint64_t i = 0; i < mu; ++i) cycle_start = walker.next(cycle_start);
  bool all_zero_cycle = true;
  std::uint64_t state = cycle_start;
  for (std::uint64_t i = 0; i < lambda; ++i) {
    state = walker.next(state);
    ++report.counts[walker.emitted(state)];
    if (state != 0) all_zero_cycle = false;
  }
  report.degenerate = all_zero_cycle && cycle_start == 0;
  report.uniform =
      std::all_of(report.counts.begin(), report.counts.end(),
                  [&](std::uint64_t c) { return c == report.counts[0]; });
  return report;
}

}  // namespace z4
