#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lielcs/spec_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "lielcs_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path log = work_dir() / "out.log";
  const std::string cmd =
      std::string(LIELCS_BIN_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream f(log);
  std::ostringstream ss;
  ss << f.rdbuf();
  return {WEXITSTATUS(raw), ss.str()};
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = work_dir() / name;
  std::ofstream f(p, std::ios::binary);
  f << content;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const char* kControllableSpec = R"({
  "xi": [1.0, 0.0],
  "A": {"p": 0.0, "q": 1.0},
  "a": 1.0,
  "Y": {"alpha": 1.0, "eta": [1.0, 0.0], "beta": 0.0},
  "omega": [-1.0, 1.0]
})";

}  // namespace

TEST_CASE("classify reports the controllable verdict") {
  const fs::path spec = write_file("controllable.json", kControllableSpec);
  const RunResult r = run_cli("classify " + spec.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"category\": \"CONTROLLABLE\"") != std::string::npos);
  CHECK(r.output.find("\"larc\": true") != std::string::npos);
  CHECK(r.output.find("\"subalgebra_dim\": 4") != std::string::npos);
}

TEST_CASE("classify reports NOT_LARC when a = beta = 0") {
  const fs::path spec = write_file("nolarc.json", R"({
    "xi": [1.0, 0.0], "A": {"p": 0.0, "q": 1.0}, "a": 0.0,
    "Y": {"alpha": 1.0, "eta": [1.0, 0.0], "beta": 0.0},
    "omega": [-1.0, 1.0]
  })");
  const RunResult r = run_cli("classify " + spec.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"category\": \"NOT_LARC\"") != std::string::npos);
}

TEST_CASE("classify accepts the matrix form of A") {
  const fs::path spec = write_file("matrix_a.json", R"({
    "xi": [1.0, 0.0], "A": [[0.5, -2.0], [2.0, 0.5]], "a": 1.0,
    "Y": {"alpha": 1.0, "eta": [1.0, 0.0], "beta": 0.0},
    "omega": [-1.0, 1.0]
  })");
  const RunResult r = run_cli("classify " + spec.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"category\": \"UNIQUE_CONTROL_SET\"") != std::string::npos);
  CHECK(r.output.find("\"p\": 0.5") != std::string::npos);
  CHECK(r.output.find("\"q\": 2.0") != std::string::npos);
}

TEST_CASE("invalid specs exit with code 2 and name the field") {
  const fs::path bad_omega = write_file("bad_omega.json", R"({
    "xi": [1.0, 0.0], "A": {"p": 0.0, "q": 1.0}, "a": 1.0,
    "Y": {"alpha": 1.0, "eta": [1.0, 0.0], "beta": 0.0},
    "omega": [0.5, 1.0]
  })");
  RunResult r = run_cli("classify " + bad_omega.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("omega") != std::string::npos);

  const fs::path bad_a = write_file("bad_a.json", R"({
    "xi": [1.0, 0.0], "A": [[1.0, 0.0], [0.0, 2.0]], "a": 1.0,
    "Y": {"alpha": 1.0, "eta": [1.0, 0.0], "beta": 0.0},
    "omega": [-1.0, 1.0]
  })");
  r = run_cli("classify " + bad_a.string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("'A'") != std::string::npos);

  r = run_cli("classify " + (work_dir() / "missing.json").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("spec round-trips through parse and serialize") {
  const fs::path spec = write_file("roundtrip.json", kControllableSpec);
  const lielcs::SystemSpec a = lielcs::SystemSpec::load(spec.string());
  const lielcs::SystemSpec b = lielcs::SystemSpec::from_json_text(a.to_json_text());
  CHECK(a.to_json_text() == b.to_json_text());
  CHECK(a.system.X.p == b.system.X.p);
  CHECK(a.system.X.q == b.system.X.q);
  CHECK(a.system.Y.alpha == b.system.Y.alpha);
  CHECK(a.system.omega_minus == b.system.omega_minus);
}

TEST_CASE("simulate with zero control from the identity is constant") {
  const fs::path spec = write_file("sim.json", kControllableSpec);
  const fs::path out = work_dir() / "traj.csv";
  const RunResult r = run_cli("simulate " + spec.string() +
                              " --u-const 0 --t 2 --dt 0.5 --out " + out.string());
  CHECK(r.exit_code == 0);
  std::ifstream f(out);
  std::string header;
  std::getline(f, header);
  CHECK(header == "t,theta,vx,vy,phi,theta_wrapped,phi_wrapped");
  int rows = 0;
  for (std::string line; std::getline(f, line);) {
    ++rows;
    // every state column is exactly zero
    const auto first_comma = line.find(',');
    CHECK(line.substr(first_comma) == ",0,0,0,0,0,0");
  }
  CHECK(rows == 5);
}

TEST_CASE("simulate --method both reports a small deviation") {
  const fs::path spec = write_file("sim2.json", kControllableSpec);
  const fs::path out = work_dir() / "traj2.csv";
  const RunResult r = run_cli("simulate " + spec.string() +
                              " --u-const 0.8 --t 3 --dt 0.001 --method both --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const auto pos = r.output.find("max_deviation=");
  REQUIRE(pos != std::string::npos);
  const double dev = std::atof(r.output.c_str() + pos + 14);
  CHECK(dev < 1e-8);
  CHECK(fs::exists(out));
  CHECK(fs::exists(out.string() + ".rk4.csv"));
}

TEST_CASE("simulate rejects controls outside omega") {
  const fs::path spec = write_file("sim3.json", kControllableSpec);
  const fs::path ctrl = write_file("ctrl.json", R"({"segments": [[1.0, 2.0]]})");
  const RunResult r = run_cli("simulate " + spec.string() + " --control " + ctrl.string() +
                              " --out " + (work_dir() / "x.csv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("outside") != std::string::npos);
}

TEST_CASE("reach runs deterministically") {
  const fs::path spec = write_file("reach.json", kControllableSpec);
  const std::string common = "reach " + spec.string() +
                             " --horizon 4 --n 150 --seed 9 --theta-bins 6 --v-bins 10 "
                             "--phi-bins 6 --out ";
  const RunResult r1 = run_cli(common + (work_dir() / "g1").string());
  const RunResult r2 = run_cli(common + (work_dir() / "g2").string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(r1.output.find("occupancy_fraction=") != std::string::npos);
  CHECK(r1.output.find("fiber_min=") != std::string::npos);
  // byte-identical JSON for the same seed
  CHECK(read_file(work_dir() / "g1.json") == read_file(work_dir() / "g2.json"));
  CHECK(read_file(work_dir() / "g1.csv") == read_file(work_dir() / "g2.csv"));
}

TEST_CASE("reach output is byte-identical across worker counts") {
  const fs::path spec = write_file("reach_threads.json", kControllableSpec);
  const std::string common = "reach " + spec.string() +
                             " --horizon 4 --n 120 --seed 11 --theta-bins 6 --v-bins 10 "
                             "--phi-bins 6 --out ";
  const fs::path log = work_dir() / "out.log";
  const std::string one = "LIE_LCS_THREADS=1 " + std::string(LIELCS_BIN_PATH) + " " + common +
                          (work_dir() / "t1").string() + " > " + log.string() + " 2>&1";
  const std::string two = "LIE_LCS_THREADS=2 " + std::string(LIELCS_BIN_PATH) + " " + common +
                          (work_dir() / "t2").string() + " > " + log.string() + " 2>&1";
  CHECK(WEXITSTATUS(std::system(one.c_str())) == 0);
  CHECK(WEXITSTATUS(std::system(two.c_str())) == 0);
  CHECK(read_file(work_dir() / "t1.json") == read_file(work_dir() / "t2.json"));
  CHECK(read_file(work_dir() / "t1.csv") == read_file(work_dir() / "t2.csv"));
}

TEST_CASE("reach with --n 0 reports zero occupancy") {
  const fs::path spec = write_file("reach0.json", kControllableSpec);
  const RunResult r = run_cli("reach " + spec.string() + " --horizon 2 --n 0 --out " +
                              (work_dir() / "g0").string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("occupancy_fraction=0.000000") != std::string::npos);
}

TEST_CASE("reach rejects a bad window") {
  const fs::path spec = write_file("reachbad.json", kControllableSpec);
  const RunResult r = run_cli("reach " + spec.string() +
                              " --v-min 3 3 --v-max -3 -3 --out " +
                              (work_dir() / "gb").string());
  CHECK(r.exit_code == 2);
}

TEST_CASE("verify passes on a small trial budget") {
  const RunResult r = run_cli("verify --suite all --trials 60 --seed 42");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("all properties passed") != std::string::npos);
  CHECK(r.output.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify --trials 0 warns and exits cleanly") {
  const RunResult r = run_cli("verify --trials 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("no trials") != std::string::npos);
}

TEST_CASE("verify self-test: a broken bracket is caught by name") {
  const RunResult r = run_cli("verify --suite algebra --trials 40 --inject-bracket-bug");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("[FAIL] algebra/jacobi-identity") != std::string::npos);
  CHECK(r.output.find("[FAIL] algebra/bracket-antisymmetry") != std::string::npos);
}
