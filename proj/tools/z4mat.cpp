// z4mat: command-line front end for the Z4 matrix kernels.
//
// Exit codes: 0 success, 1 domain/dimension error, 2 usage or file error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "z4/error.hpp"
#include "z4/gf2poly.hpp"
#include "z4/matrix.hpp"
#include "z4/matrix_io.hpp"
#include "z4/schedule.hpp"
#include "z4/sequence.hpp"
#include "z4/strassen.hpp"

namespace {

z4::RecurrenceSpec make_spec(const std::vector<std::int64_t>& coeffs, std::int64_t s) {
  z4::RecurrenceSpec spec;
  for (std::int64_t c : coeffs) {
    if (c < 0 || c > 3)
      throw z4::DomainError("coefficient " + std::to_string(c) + " is outside 0..3");
    spec.coeffs.push_back(static_cast<std::uint8_t>(c));
  }
  if (s < 1 || s > 63)
    throw z4::DomainError("modulus exponent s must be in 1..63");
  spec.s = static_cast<std::uint32_t>(s);
  spec.validate();
  return spec;
}

z4::BigUint parse_exponent(const std::string& text) {
  if (text.empty()) throw z4::DomainError("exponent must not be empty");
  for (char c : text)
    if (c < '0' || c > '9')
      throw z4::DomainError("exponent must be a non-negative decimal integer");
  return z4::BigUint(text);
}

struct MulArgs {
  std::string a, b, out;
  std::string algo = "blocked";
  std::size_t threshold = 64;
  std::size_t n = 28;
  std::size_t block = 20;
};

int run_mul(const MulArgs& args) {
  z4::Matrix a = z4::load_matrix(args.a);
  z4::Matrix b = z4::load_matrix(args.b);
  z4::Matrix c;
  if (args.algo == "naive") {
    c = z4::mul_naive(a, b);
  } else if (args.algo == "blocked") {
    c = z4::mul_blocked(a, b, {args.block, args.n, 32});
  } else {
    c = z4::mul_strassen(a, b, {args.threshold});
  }
  z4::save_matrix(args.out, c);
  return 0;
}

struct PowArgs {
  std::string in, out;
  std::string exp;
  std::int64_t uniform_test_d = -1;
};

int run_pow(const PowArgs& args) {
  z4::Matrix m = z4::load_matrix(args.in);
  z4::BigUint e;
  if (args.uniform_test_d >= 0) {
    if (args.uniform_test_d < 1)
      throw z4::DomainError("--exp-uniform-test order must be at least 1");
    e = (z4::BigUint(1) << (args.uniform_test_d + 1)) - 2;
  } else {
    e = parse_exponent(args.exp);
  }
  z4::save_matrix(args.out, z4::matpow(m, e));
  return 0;
}

struct FindUniformArgs {
  std::vector<std::int64_t> coeffs;
  std::int64_t s = 0;
  std::string emit_matrix;
};

std::string coeff_list(const z4::RecurrenceSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.coeffs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(spec.coeffs[i]);
  }
  return out;
}

int run_find_uniform(const FindUniformArgs& args) {
  z4::RecurrenceSpec spec = make_spec(args.coeffs, args.s);
  z4::SelectionReport report = z4::select_uniform(spec);
  if (report.admissible.has_value() && !*report.admissible)
    std::cerr << "warning: coefficients fail the (x+1)^2 * irreducible condition\n";

  std::size_t width = std::max<std::size_t>(coeff_list(spec).size(), 6);
  std::cout << "exponent " << report.exponent << "\n";
  std::cout << std::left << std::setw(10) << "candidate" << std::setw(width + 2)
            << "coeffs" << std::setw(10) << "identity" << "survivor\n";
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    bool survivor = !report.identity_test[i];
    std::cout << std::left << std::setw(10) << i << std::setw(width + 2)
              << coeff_list(report.candidates[i]) << std::setw(10)
              << (report.identity_test[i] ? "true" : "false")
              << (survivor ? "yes" : "no") << "\n";
  }
  std::cout << "survivors " << report.survivors.size() << "\n";
  std::cout << "unique " << (report.unique ? "true" : "false") << "\n";
  if (!args.emit_matrix.empty())
    z4::save_matrix(args.emit_matrix, z4::companion(spec));
  return 0;
}

int run_check_poly(const std::vector<std::int64_t>& coeffs) {
  z4::RecurrenceSpec spec = make_spec(coeffs, 1);
  z4::ConditionReport report = z4::check_condition(spec);
  std::cout << "char_poly " << report.char_poly.to_string() << "\n";
  std::cout << "admissible " << (report.admissible ? "true" : "false") << "\n";
  if (report.factor) {
    const z4::Gf2Poly& p = *report.factor;
    std::cout << "P " << p.to_string() << "\n";
    std::cout << "P_degree " << p.degree() << "\n";
    if (p != z4::Gf2Poly::x() && p.degree() <= z4::kOrderDegreeCap) {
      std::uint64_t e = z4::order(p);
      std::uint64_t maximal = (std::uint64_t{1} << p.degree()) - 1;
      std::cout << "P_order " << e << "\n";
      std::cout << "P_order_maximal " << (e == maximal ? "true" : "false") << "\n";
    } else {
      std::cout << "P_order n/a\n";
    }
  }
  return 0;
}

struct GenArgs {
  std::vector<std::int64_t> coeffs;
  std::int64_t s = 0;
  std::vector<std::int64_t> init;
  std::uint64_t count = 0;
};

int run_gen(const GenArgs& args) {
  z4::RecurrenceSpec spec = make_spec(args.coeffs, args.s);
  std::vector<std::uint64_t> init;
  for (std::int64_t v : args.init) {
    if (v < 0) throw z4::DomainError("init values must be non-negative");
    init.push_back(static_cast<std::uint64_t>(v));
  }
  for (std::uint64_t v : z4::generate(spec, init, args.count))
    std::cout << v << "\n";
  return 0;
}

struct ScheduleArgs {
  z4::ScheduleParams params;
  bool do_simulate = false;
  std::string trace_path;
};

void print_report(const z4::ScheduleReport& r) {
  auto line = [](const char* label, auto value) {
    std::cout << std::left << std::setw(17) << label << value << "\n";
  };
  line("kappa", r.kappa);
  line("K_naive", r.k_naive);
  line("K_improved", r.k_improved);
  line("Phi_naive", r.phi_naive);
  line("Phi_improved", r.phi_improved);
  line("Gamma", r.gamma);
  line("margin", r.memory_bound_margin);
  line("feasible", r.feasible ? "true" : "false");
  if (!r.feasible) line("reason", r.infeasible_reason);
  if (r.simulated_cycles) {
    line("simulated_cycles", *r.simulated_cycles);
    line("row_fills", r.row_fills);
    line("col_fills", r.col_fills);
    line("violations", r.data_ready_violations);
  }
}

std::string bitmap(std::uint64_t bits, std::uint64_t width) {
  std::string s(width, '0');
  for (std::uint64_t i = 0; i < width; ++i)
    if (bits >> i & 1) s[i] = '1';
  return s;
}

int run_schedule(const ScheduleArgs& args) {
  if (!args.do_simulate && args.trace_path.empty()) {
    print_report(z4::cost_model(args.params));
    return 0;
  }
  std::vector<z4::TraceStep> trace;
  z4::ScheduleReport r =
      z4::simulate(args.params, args.trace_path.empty() ? nullptr : &trace);
  print_report(r);
  if (!args.trace_path.empty()) {
    std::ofstream out(args.trace_path);
    if (!out)
      throw z4::FormatError("cannot open '" + args.trace_path + "' for writing");
    for (const z4::TraceStep& s : trace)
      out << "step=" << s.step << " compute=" << s.compute << " memory=" << s.memory
          << " rowstore=" << bitmap(s.rowstore, args.params.z)
          << " colstore=" << bitmap(s.colstore, 2) << "\n";
  }
  return 0;
}

struct SelftestArgs {
  std::size_t width = 28;
  std::uint64_t rounds = 0;
  bool inject_fault = false;
};

int run_selftest(const SelftestArgs& args) {
  std::uint64_t errors = z4::staggered_selftest(args.width, args.rounds,
                                                args.inject_fault);
  std::cout << "rounds " << args.rounds << "\n";
  std::cout << "errors " << errors << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bit-sliced mod-4 matrix arithmetic"};
  app.require_subcommand(1);

  MulArgs mul_args;
  CLI::App* mul = app.add_subcommand("mul", "Multiply two matrices");
  mul->add_option("A", mul_args.a, "left operand file")->required();
  mul->add_option("B", mul_args.b, "right operand file")->required();
  mul->add_option("-o,--out", mul_args.out, "output file")->required();
  mul->add_option("--algo", mul_args.algo, "naive | blocked | strassen")
      ->check(CLI::IsMember({"naive", "blocked", "strassen"}))
      ->capture_default_str();
  mul->add_option("--threshold", mul_args.threshold, "strassen recursion cutoff")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mul->add_option("--n", mul_args.n, "dot-product chunk width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mul->add_option("--block", mul_args.block, "output tile edge")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  PowArgs pow_args;
  CLI::App* pow = app.add_subcommand("pow", "Raise a square matrix to a power");
  pow->add_option("M", pow_args.in, "matrix file")->required();
  pow->add_option("-o,--out", pow_args.out, "output file")->required();
  CLI::Option* exp_opt = pow->add_option("--exp", pow_args.exp,
                                         "decimal exponent, arbitrary precision");
  CLI::Option* uni_opt =
      pow->add_option("--exp-uniform-test", pow_args.uniform_test_d,
                      "order d; uses exponent 2^(d+1)-2");
  exp_opt->excludes(uni_opt);
  uni_opt->excludes(exp_opt);

  FindUniformArgs fu_args;
  CLI::App* fu = app.add_subcommand(
      "find-uniform", "Identity-test the four candidate recurrences");
  fu->add_option("--coeffs", fu_args.coeffs, "a0,a1,...,a(d-1)")
      ->required()
      ->delimiter(',');
  fu->add_option("--s", fu_args.s, "modulus exponent")->required();
  fu->add_option("--emit-matrix", fu_args.emit_matrix,
                 "write the base companion matrix to this file");

  std::vector<std::int64_t> cp_coeffs;
  CLI::App* cp = app.add_subcommand(
      "check-poly", "Factor the characteristic polynomial mod 2");
  cp->add_option("--coeffs", cp_coeffs, "a0,a1,...,a(d-1)")
      ->required()
      ->delimiter(',');

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand("gen", "Emit sequence values");
  gen->add_option("--coeffs", gen_args.coeffs, "a0,a1,...,a(d-1)")
      ->required()
      ->delimiter(',');
  gen->add_option("--s", gen_args.s, "modulus exponent")->required();
  gen->add_option("--init", gen_args.init, "u0,...,u(d-1)")
      ->required()
      ->delimiter(',');
  gen->add_option("--count", gen_args.count, "values to emit")->required();

  ScheduleArgs sched_args;
  CLI::App* sched = app.add_subcommand(
      "schedule", "Cost model and simulation of the overlap schedule");
  sched->add_option("--n", sched_args.params.n, "chunk width")->required();
  sched->add_option("--depth", sched_args.params.depth, "container depth")->required();
  sched->add_option("--k", sched_args.params.k, "matrix edge")->required();
  sched->add_option("--z", sched_args.params.z, "row-store count")->required();
  sched->add_option("--delta", sched_args.params.delta, "cycles per container fill")
      ->required();
  sched->add_option("--block", sched_args.params.block, "tile edge")
      ->capture_default_str();
  sched->add_flag("--simulate", sched_args.do_simulate, "run the step simulation");
  sched->add_option("--trace", sched_args.trace_path,
                    "write a per-step trace (implies --simulate)");

  SelftestArgs st_args;
  CLI::App* st = app.add_subcommand(
      "selftest", "Staggered cross-check of the packed dot product");
  st->add_option("--width", st_args.width, "vector width")->required();
  st->add_option("--rounds", st_args.rounds, "rounds to run")->required();
  st->add_flag("--inject-fault", st_args.inject_fault,
               "corrupt the subject to confirm detection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mul->parsed()) return run_mul(mul_args);
    if (pow->parsed()) {
      if (!*exp_opt && !*uni_opt) {
        std::cerr << "error: pow needs --exp or --exp-uniform-test\n";
        return 2;
      }
      return run_pow(pow_args);
    }
    if (fu->parsed()) return run_find_uniform(fu_args);
    if (cp->parsed()) return run_check_poly(cp_coeffs);
    if (gen->parsed()) return run_gen(gen_args);
    if (sched->parsed()) return run_schedule(sched_args);
    if (st->parsed()) return run_selftest(st_args);
  } catch (const z4::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const z4::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const z4::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return 2;
  }
  return 2;
}
