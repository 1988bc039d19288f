// End-to-end checks of the z4mat binary. The harness locates the tool
// through the Z4MAT_BIN environment variable set by CTest.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "z4/matrix.hpp"
#include "z4/matrix_io.hpp"
#include "z4/sequence.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFixture {
 public:
  CliFixture() {
    const char* bin = std::getenv("Z4MAT_BIN");
    REQUIRE_MESSAGE(bin != nullptr, "Z4MAT_BIN must point at the z4mat binary");
    bin_ = bin;
    dir_ = fs::temp_directory_path() /
           ("z4mat_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~CliFixture() { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  RunResult run(const std::string& args) const {
    fs::path out = dir_ / "stdout.txt";
    fs::path err = dir_ / "stderr.txt";
    std::string cmd = bin_ + " " + args + " > " + out.string() + " 2> " +
                      err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

 private:
  std::string bin_;
  fs::path dir_;
};

}  // namespace

TEST_CASE("mul with the identity and exit code 0") {
  CliFixture cli;
  z4::Matrix id = z4::Matrix::identity(8);
  z4::save_matrix(cli.path("i.z4t").string(), id);
  RunResult r = cli.run("mul " + cli.path("i.z4t").string() + " " +
                        cli.path("i.z4t").string() + " -o " +
                        cli.path("c.z4t").string());
  REQUIRE(r.exit_code == 0);
  CHECK(z4::load_matrix(cli.path("c.z4t").string()) == id);
}

TEST_CASE("all three algorithms agree through the CLI, across formats") {
  CliFixture cli;
  std::mt19937_64 rng(81);
  z4::Matrix a = oracle::random_matrix(rng, 33, 33);
  z4::Matrix b = oracle::random_matrix(rng, 33, 33);
  z4::save_matrix(cli.path("a.z4b").string(), a);  // binary inputs
  z4::save_matrix(cli.path("b.z4t").string(), b);  // text input
  z4::Matrix expect = oracle::mul_mod4(a, b);

  for (std::string algo : {"naive", "blocked", "strassen"}) {
    RunResult r = cli.run("mul " + cli.path("a.z4b").string() + " " +
                          cli.path("b.z4t").string() + " --algo " + algo +
                          " --threshold 8 -o " + cli.path("c.z4b").string());
    CAPTURE(algo);
    REQUIRE(r.exit_code == 0);
    CHECK(z4::load_matrix(cli.path("c.z4b").string()) == expect);
  }
}

TEST_CASE("pow with --exp-uniform-test matches the repeated-multiplication oracle") {
  CliFixture cli;
  z4::Matrix m = z4::companion({{1, 1, 0, 1}, 2});
  z4::save_matrix(cli.path("m.z4t").string(), m);
  RunResult r = cli.run("pow " + cli.path("m.z4t").string() + " --exp-uniform-test 4 -o " +
                        cli.path("p.z4t").string());
  REQUIRE(r.exit_code == 0);
  CHECK(z4::load_matrix(cli.path("p.z4t").string()) ==
        oracle::pow_by_repeated_mul(m, 30));

  SUBCASE("--exp decimal path agrees") {
    RunResult r2 = cli.run("pow " + cli.path("m.z4t").string() + " --exp 30 -o " +
                           cli.path("p2.z4t").string());
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(cli.path("p2.z4t")) == slurp(cli.path("p.z4t")));
  }
}

TEST_CASE("exit codes") {
  CliFixture cli;
  SUBCASE("unknown flag is a usage error") {
    CHECK(cli.run("mul --frobnicate").exit_code == 2);
    CHECK(cli.run("nonsense").exit_code == 2);
  }
  SUBCASE("malformed matrix file names the offending line") {
    std::ofstream(cli.path("bad.z4t")) << "z4m 2 2\n04\n00\n";
    RunResult r = cli.run("mul " + cli.path("bad.z4t").string() + " " +
                          cli.path("bad.z4t").string() + " -o " +
                          cli.path("c.z4t").string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("line 2") != std::string::npos);
  }
  SUBCASE("missing input file") {
    RunResult r = cli.run("mul missing.z4t missing.z4t -o out.z4t");
    CHECK(r.exit_code == 2);
  }
  SUBCASE("dimension mismatch is a domain error") {
    std::mt19937_64 rng(82);
    z4::save_matrix(cli.path("a.z4t").string(), oracle::random_matrix(rng, 2, 2));
    z4::save_matrix(cli.path("b.z4t").string(), oracle::random_matrix(rng, 3, 3));
    RunResult r = cli.run("mul " + cli.path("a.z4t").string() + " " +
                          cli.path("b.z4t").string() + " -o " +
                          cli.path("c.z4t").string());
    CHECK(r.exit_code == 1);
  }
  SUBCASE("bad coefficient is a domain error") {
    CHECK(cli.run("check-poly --coeffs 1,5,1").exit_code == 1);
  }
  SUBCASE("pow without an exponent choice is a usage error") {
    z4::save_matrix(cli.path("m.z4t").string(), z4::Matrix::identity(2));
    RunResult r = cli.run("pow " + cli.path("m.z4t").string() + " -o " +
                          cli.path("p.z4t").string());
    CHECK(r.exit_code == 2);
  }
}

TEST_CASE("schedule prints the reference numbers") {
  CliFixture cli;
  RunResult r = cli.run("schedule --n 28 --depth 32 --k 896 --z 10 --delta 140");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("Gamma") != std::string::npos);
  CHECK(r.out.find("64800") != std::string::npos);
  CHECK(r.out.find("44100") != std::string::npos);
  CHECK(r.out.find("feasible         true") != std::string::npos);

  SUBCASE("--simulate adds the stepped totals and --trace writes the log") {
    fs::path trace = cli.path("trace.txt");
    RunResult r2 = cli.run(
        "schedule --n 28 --depth 32 --k 896 --z 10 --delta 140 --simulate --trace " +
        trace.string());
    REQUIRE(r2.exit_code == 0);
    CHECK(r2.out.find("simulated_cycles 64800") != std::string::npos);
    CHECK(r2.out.find("row_fills        45") != std::string::npos);
    CHECK(r2.out.find("col_fills        225") != std::string::npos);
    std::ifstream in(trace);
    std::string first;
    std::getline(in, first);
    CHECK(first.find("step=0 compute=288 memory=196 rowstore=") == 0);
    std::size_t lines = 1;
    std::string line;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 225);
  }
}

TEST_CASE("gen emits the fibonacci example") {
  CliFixture cli;
  RunResult r = cli.run("gen --coeffs 1,1 --s 2 --init 0,1 --count 6");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out == "1\n2\n3\n1\n0\n1\n");
}

TEST_CASE("check-poly reports the factorization") {
  CliFixture cli;
  RunResult r = cli.run("check-poly --coeffs 1,1,0,1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("char_poly x^4+x^3+x+1") != std::string::npos);
  CHECK(r.out.find("admissible true") != std::string::npos);
  CHECK(r.out.find("P x^2+x+1") != std::string::npos);
  CHECK(r.out.find("P_order 3") != std::string::npos);
}

TEST_CASE("find-uniform prints four candidates and emits the companion matrix") {
  CliFixture cli;
  fs::path mfile = cli.path("companion.z4t");
  RunResult r = cli.run("find-uniform --coeffs 1,1,0,1 --s 2 --emit-matrix " +
                        mfile.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("exponent 30") != std::string::npos);
  CHECK(r.out.find("3,3,0,1") != std::string::npos);
  CHECK(r.out.find("survivors") != std::string::npos);
  CHECK(z4::load_matrix(mfile.string()) == z4::companion({{1, 1, 0, 1}, 2}));
}

TEST_CASE("selftest CLI reports zero errors, nonzero under fault injection") {
  CliFixture cli;
  RunResult clean = cli.run("selftest --width 28 --rounds 2000");
  REQUIRE(clean.exit_code == 0);
  CHECK(clean.out.find("errors 0") != std::string::npos);

  RunResult faulty = cli.run("selftest --width 28 --rounds 2000 --inject-fault");
  REQUIRE(faulty.exit_code == 0);
  CHECK(faulty.out.find("errors 0") == std::string::npos);
}
