#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "matchdc/io.hpp"
#include "matchdc/reductions.hpp"
#include "support.hpp"

// End-to-end runs of the installed binary. Paths come from the build
// system; outputs go through a scratch directory.

namespace {

using namespace matchdc;

struct CliRun {
  int exit_code = -1;
  std::string out;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

std::string scratch_dir() {
  static std::string dir = [] {
    std::string d = "/tmp/matchdc_cli_test_XXXXXX";
    REQUIRE(mkdtemp(d.data()) != nullptr);
    return d;
  }();
  return dir;
}

CliRun run_cli(const std::string& args, const std::string& stdin_file = "") {
  const std::string out_path = scratch_dir() + "/stdout";
  std::string command = std::string(MATCHDC_CLI_PATH) + " " + args;
  if (!stdin_file.empty()) command += " < " + stdin_file;
  command += " > " + out_path + " 2> " + scratch_dir() + "/stderr";
  int status = std::system(command.c_str());
  CliRun run;
  run.exit_code = WEXITSTATUS(status);
  run.out = slurp(out_path);
  return run;
}

std::string data(const std::string& name) {
  return std::string(MATCHDC_TEST_DATA_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("validate: pass, invariant failure and parse failure exit codes") {
  auto ok = run_cli("validate " + data("example1.scdc.json"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out == "ok\n");

  const std::string bad_path = scratch_dir() + "/bad_quotas.json";
  auto inst = testsupport::example1_scdc();
  inst.schools["c"].min_quotas = {2, 0};
  spit(bad_path, serialize(inst));
  auto invalid = run_cli("validate " + bad_path);
  CHECK(invalid.exit_code == 1);
  CHECK(invalid.out.find("min quota exceeds max") != std::string::npos);

  const std::string garbage_path = scratch_dir() + "/garbage.json";
  spit(garbage_path, "not even json");
  CHECK(run_cli("validate " + garbage_path).exit_code == 2);

  CHECK(run_cli("validate -", data("example1.scdc.json")).exit_code == 0);
}

TEST_CASE("reduce reproduces the golden induced instance byte for byte") {
  const std::string out_path = scratch_dir() + "/reduced.json";
  const std::string map_path = scratch_dir() + "/map.json";
  auto run = run_cli("reduce " + data("example1.scdc.json") + " -o " +
                     out_path + " --map " + map_path);
  REQUIRE(run.exit_code == 0);
  CHECK(slurp(out_path) == slurp(data("example1.hrq.golden.json")));

  SUBCASE("restore maps a lifted matching back") {
    auto reduced = reduce_scdc_to_hrq(testsupport::example1_scdc());
    auto lifted = lift_matching(
        reduced.map, testsupport::make_matching({{"s1", "c"}, {"s3", "c"}}));
    const std::string lifted_path = scratch_dir() + "/lifted.json";
    spit(lifted_path, serialize(lifted));
    const std::string restored_path = scratch_dir() + "/restored.json";
    auto restore = run_cli("restore --map " + map_path + " " + lifted_path +
                           " -o " + restored_path);
    REQUIRE(restore.exit_code == 0);
    CHECK(parse_matching(slurp(restored_path)) ==
          testsupport::make_matching({{"s1", "c"}, {"s3", "c"}}));
  }
}

TEST_CASE("check subcommands and their exit codes") {
  auto stable = run_cli("check stable " + data("example1.scdc.json") + " " +
                        data("example1_stable.matching.json"));
  CHECK(stable.exit_code == 0);
  CHECK(stable.out == "[]\n");

  auto unstable = run_cli("check stable " + data("example1.scdc.json") + " " +
                          data("example1_unstable.matching.json"));
  CHECK(unstable.exit_code == 1);
  CHECK(unstable.out.find("\"agent\": \"s1\"") != std::string::npos);

  auto feasible = run_cli("check feasible " + data("example1.scdc.json") +
                          " " + data("example1_stable.matching.json"));
  CHECK(feasible.exit_code == 0);

  const std::string empty_path = scratch_dir() + "/empty.matching.json";
  spit(empty_path, serialize(Matching{}));
  auto infeasible =
      run_cli("check feasible " + data("example1.scdc.json") + " " + empty_path);
  CHECK(infeasible.exit_code == 1);
  CHECK(infeasible.out.find("TypeMinViolated") != std::string::npos);

  // Stability is undefined on infeasible outcomes: usage error.
  auto undefined =
      run_cli("check stable " + data("example1.scdc.json") + " " + empty_path);
  CHECK(undefined.exit_code == 2);

  auto fair = run_cli("check fair-ml " + data("example1_zeromin.scdc.json") +
                      " " + data("example1_sd.matching.json") +
                      " --master-list " + data("ml_students.json"));
  CHECK(fair.exit_code == 0);

  auto envied = run_cli("check fair-ml " + data("example1_zeromin.scdc.json") +
                        " " + data("example1_stable.matching.json") +
                        " --master-list " + data("ml_students.json"));
  CHECK(envied.exit_code == 1);

  auto no_ml = run_cli("check fair-ml " + data("example1_zeromin.scdc.json") +
                       " " + data("example1_stable.matching.json"));
  CHECK(no_ml.exit_code == 2);
}

TEST_CASE("solve exhaustive and serial dictatorship") {
  auto exhaustive =
      run_cli("solve --method exhaustive " + data("example1.scdc.json"));
  CHECK(exhaustive.exit_code == 0);
  CHECK(exhaustive.out.find("\"status\": \"found\"") != std::string::npos);

  auto all = run_cli("solve --method exhaustive --all " +
                     data("example1.scdc.json"));
  CHECK(all.exit_code == 0);

  auto sd = run_cli("solve --method sd " + data("example1_zeromin.scdc.json") +
                    " --master-list " + data("ml_students.json"));
  CHECK(sd.exit_code == 0);
  CHECK(parse_matching(sd.out) ==
        testsupport::make_matching({{"s1", "c"}, {"s2", "c"}}));

  // Minimum quotas forbid serial dictatorship.
  auto rejected = run_cli("solve --method sd " + data("example1.scdc.json") +
                          " --master-list " + data("ml_students.json"));
  CHECK(rejected.exit_code == 2);

  auto truncated = run_cli("solve --method exhaustive --budget-nodes 1 " +
                           data("example1.scdc.json"));
  CHECK(truncated.exit_code == 3);
}

TEST_CASE("generators") {
  const std::string gadget_path = scratch_dir() + "/setcover_gadget.json";
  auto setcover =
      run_cli("gen setcover " + data("setcover_small.json") + " -o " +
              gadget_path);
  REQUIRE(setcover.exit_code == 0);
  CHECK(run_cli("validate " + gadget_path).exit_code == 0);

  const std::string sat_path = scratch_dir() + "/threesat_gadget.json";
  auto threesat =
      run_cli("gen threesat " + data("restricted.cnf") + " -o " + sat_path);
  REQUIRE(threesat.exit_code == 0);
  CHECK(run_cli("validate " + sat_path).exit_code == 0);

  // A formula breaking the exactly-twice restriction is a usage error.
  const std::string bad_cnf = scratch_dir() + "/bad.cnf";
  spit(bad_cnf, "p cnf 2 2\n1 1 2 0\n1 -1 -2 0\n");
  CHECK(run_cli("gen threesat " + bad_cnf + " -o -").exit_code == 2);

  auto once = run_cli(
      "gen random scdc --students 5 --schools 3 --types 2 --prob 0.7 "
      "--min-quotas random --seed 42 -o -");
  auto twice = run_cli(
      "gen random scdc --students 5 --schools 3 --types 2 --prob 0.7 "
      "--min-quotas random --seed 42 -o -");
  REQUIRE(once.exit_code == 0);
  CHECK(once.out == twice.out);
  CHECK_FALSE(once.out.empty());

  const std::string hrq_path = scratch_dir() + "/random_hrq.json";
  auto hrq = run_cli(
      "gen random hrq --doctors 4 --hospitals 3 --regions 2 --prob 0.8 "
      "--min-quotas random --seed 7 -o " + hrq_path);
  REQUIRE(hrq.exit_code == 0);
  CHECK(run_cli("validate " + hrq_path).exit_code == 0);

  const std::string minmax_path = scratch_dir() + "/minmax.json";
  auto minmax = run_cli("minmax " + hrq_path + " -o " + minmax_path);
  REQUIRE(minmax.exit_code == 0);
  CHECK(run_cli("validate " + minmax_path).exit_code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate x").exit_code == 2);
  CHECK(run_cli("check stable").exit_code == 2);
  CHECK(run_cli("solve --method warp " + data("example1.scdc.json"))
            .exit_code == 2);
}
