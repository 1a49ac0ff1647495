// End-to-end tests of the command-line binary: exit codes, report files,
// determinism of reruns, and environment overrides.
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

const std::string kBin = RBL_BIN;

struct RunResult {
  int exit_code = -1;
};

std::string scratch_root() {
  static std::string root = [] {
    char tmpl[] = "/tmp/rbl_cli_XXXXXX";
    char* dir = mkdtemp(tmpl);
    REQUIRE(dir != nullptr);
    return std::string(dir);
  }();
  return root;
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + kBin + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return in.good();
}

}  // namespace

TEST_CASE("help exits zero; missing subcommand is a usage error") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("config errors exit with the dedicated code") {
  CHECK(run("suite nope").exit_code == 2);

  std::string dir = scratch_root();
  std::string bad_tol = dir + "/bad_tol.json";
  std::ofstream(bad_tol) << "{\"tol_psi\": 0.0}";
  CHECK(run("suite arith --config " + bad_tol).exit_code == 2);

  std::string bad_key = dir + "/bad_key.json";
  std::ofstream(bad_key) << "{\"tol_psy\": 1e-8}";
  CHECK(run("suite arith --config " + bad_key).exit_code == 2);

  CHECK(run("basin --slice nope --res 8 --out " + dir).exit_code == 2);
  CHECK(run("orbit --point 0.1,0 --nmax 10 --out " + dir).exit_code == 2);
}

TEST_CASE("arith subcommand reports the frozen verdicts") {
  std::string dir = scratch_root() + "/arith";
  CHECK(run("arith --alpha golden --kmax 15 --out " + dir).exit_code == 0);
  auto rep = nlohmann::json::parse(slurp(dir + "/arith_scan.json"));
  CHECK(rep["verdict"] == "brjuno-plausible");
  double s15 = rep["partial_sums"].back().get<double>();
  CHECK(s15 == doctest::Approx(0.126446655957923185).epsilon(1e-12));

  // the same number scanned only to depth 12 stays inconclusive
  CHECK(run("arith --alpha golden --kmax 12 --out " + dir).exit_code == 0);
  auto rep12 = nlohmann::json::parse(slurp(dir + "/arith_scan.json"));
  CHECK(rep12["verdict"] == "inconclusive");

  CHECK(run("arith --alpha 1/7 --kmax 8 --out " + dir).exit_code == 0);
  auto repq = nlohmann::json::parse(slurp(dir + "/arith_scan.json"));
  CHECK(repq["verdict"] == "root-of-unity");

  CHECK(run("arith --tuple golden,complete --degree-bound 6 --out " + dir)
            .exit_code == 0);
  auto rept = nlohmann::json::parse(slurp(dir + "/arith_scan.json"));
  CHECK(rept["one_resonant"] == true);
  CHECK(rept["violations"].empty());
}

TEST_CASE("suite run is deterministic byte for byte") {
  std::string d1 = scratch_root() + "/s1";
  std::string d2 = scratch_root() + "/s2";
  CHECK(run("suite arith --out " + d1).exit_code == 0);
  CHECK(run("suite arith --out " + d2).exit_code == 0);
  std::string a = slurp(d1 + "/arith.json");
  std::string b = slurp(d2 + "/arith.json");
  CHECK(a == b);
  CHECK(!a.empty());

  auto rep = nlohmann::json::parse(a);
  CHECK(rep["passed"] == true);
  CHECK(rep["version"].is_string());
  CHECK(rep["config_hash"].is_string());
  CHECK(rep["seed"].is_number());
  for (const auto& check : rep["checks"]) {
    CHECK(check["passed"] == true);
  }
}

TEST_CASE("fibration and metric families pass end to end") {
  std::string dir = scratch_root() + "/fm";
  CHECK(run("suite fibration --out " + dir).exit_code == 0);
  CHECK(run("suite metric --out " + dir).exit_code == 0);
  CHECK(file_exists(dir + "/fibration.json"));
  CHECK(file_exists(dir + "/metric.json"));
}

TEST_CASE("orbit subcommand emits the labeled CSV columns") {
  std::string dir = scratch_root() + "/orb";
  CHECK(run("orbit --point '0.1,0;0.1,0' --nmax 50 --emit csv --out " + dir)
            .exit_code == 0);
  std::string csv = slurp(dir + "/orbit.csv");
  CHECK(csv.rfind("n,re_z1,im_z1,re_z2,im_z2,re_u,im_u\n", 0) == 0);
  // 1 header + 51 rows
  int lines = 0;
  for (char ch : csv) lines += (ch == '\n');
  CHECK(lines == 52);
}

TEST_CASE("fatou subcommand reproduces the frozen chart values") {
  std::string dir = scratch_root() + "/fat";
  CHECK(run("fatou --point '0.1,0;0.1,0' --out " + dir).exit_code == 0);
  auto rep = nlohmann::json::parse(slurp(dir + "/fatou.json"));
  CHECK(rep["psi"]["re"].get<double>() ==
        doctest::Approx(96.54920801668283).epsilon(1e-10));
  CHECK(rep["sigma"][0]["re"].get<double>() ==
        doctest::Approx(0.10201440012002241).epsilon(1e-8));
  CHECK(rep["residuals"]["abel"].get<double>() <= 2e-8);
  CHECK(rep["depths"]["psi"].get<int>() > 100);

  CHECK(run("fatou rates --mmax 256 --out " + dir).exit_code == 0);
  std::string csv = slurp(dir + "/fatou_rates.csv");
  CHECK(csv.rfind("m,max_increment\n", 0) == 0);
}

TEST_CASE("basin subcommand writes a binary PGM and a stats table") {
  std::string dir = scratch_root() + "/bas";
  CHECK(run("basin --slice real --res 16 --nmax 400 --out " + dir).exit_code ==
        0);
  std::string pgm = slurp(dir + "/basin_real.pgm");
  CHECK(pgm.rfind("P5\n16 16\n255\n", 0) == 0);
  CHECK(pgm.size() == 13 + 16 * 16);
  for (size_t i = 13; i < pgm.size(); ++i) {
    unsigned char v = static_cast<unsigned char>(pgm[i]);
    CHECK((v == 0 || v == 128 || v == 255));
  }
  std::string stats = slurp(dir + "/basin_real_stats.csv");
  CHECK(stats.rfind("res,cells,", 0) == 0);
}

TEST_CASE("hyp subcommand reports the frozen distance bundle") {
  std::string dir = scratch_root() + "/hyp";
  std::ostringstream cmd;
  cmd.precision(17);
  // radial pair (e^-10, e^-100): distance equals the log-log lower bound
  cmd << "hyp --pair " << std::exp(-10.0) << ",0 " << std::exp(-100.0)
      << ",0 --beta 0.3 --out " << dir;
  CHECK(run(cmd.str()).exit_code == 0);
  auto rep = nlohmann::json::parse(slurp(dir + "/hyp.json"));
  CHECK(rep["distance"].get<double>() ==
        doctest::Approx(2.302585092994046).epsilon(1e-10));
  CHECK(rep["lower"].get<double>() ==
        doctest::Approx(std::log(10.0)).epsilon(1e-10));
  CHECK(rep["separation_bound"].get<double>() ==
        doctest::Approx(0.8472978603872036).epsilon(1e-12));
}

TEST_CASE("region subcommand checks membership and samples the basin") {
  std::string dir = scratch_root() + "/reg";
  CHECK(run("region --check '0.05,0;0.05,0' --out " + dir).exit_code == 0);
  auto rep = nlohmann::json::parse(slurp(dir + "/region_check.json"));
  CHECK(rep["in_local_basin"] == true);

  CHECK(run("region --sample 25 --seed 9 --out " + dir).exit_code == 0);
  std::string csv = slurp(dir + "/region_samples.csv");
  CHECK(csv.rfind("sample,re_z1,im_z1,re_z2,im_z2\n", 0) == 0);
  int lines = 0;
  for (char ch : csv) lines += (ch == '\n');
  CHECK(lines == 26);
}

TEST_CASE("forced backend env var is honored and validated") {
  // the invariance family drives the batched stepping kernel, so it both
  // exercises the override and proves backend choice never changes bytes
  std::string d1 = scratch_root() + "/envs";
  std::string d2 = scratch_root() + "/envd";
  CHECK(run("suite invariance --out " + d1, "RBL_FORCE_BACKEND=scalar ")
            .exit_code == 0);
  CHECK(run("suite invariance --out " + d2).exit_code == 0);
  CHECK(slurp(d1 + "/invariance.json") == slurp(d2 + "/invariance.json"));
  // an unsupported backend name must be rejected as a config error
  CHECK(run("suite invariance --out " + d1, "RBL_FORCE_BACKEND=quantum ")
            .exit_code == 2);
}

TEST_CASE("thread override env var keeps results identical") {
  std::string d1 = scratch_root() + "/t1";
  std::string d2 = scratch_root() + "/t2";
  CHECK(run("suite fibration --out " + d1, "RBL_THREADS=1 ").exit_code == 0);
  CHECK(run("suite fibration --out " + d2, "RBL_THREADS=4 ").exit_code == 0);
  CHECK(slurp(d1 + "/fibration.json") == slurp(d2 + "/fibration.json"));
}
