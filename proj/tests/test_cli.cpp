#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + std::string(CHPEED_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe))
    res.output.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string data_path(const char* name) {
  return std::string(CHPEED_DATA_DIR) + "/" + name;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

const std::string kFast = " --pop 20 --iters 5 ";

}  // namespace

TEST_CASE("solve writes artifacts and is byte-deterministic") {
  const fs::path out1 = fresh_dir("chpeed_cli_a");
  const fs::path out2 = fresh_dir("chpeed_cli_b");
  const std::string base =
      "solve " + data_path("case1.json") + kFast + "--seed 7 --out ";

  const CliResult r1 = run_cli(base + out1.string());
  CHECK(r1.exit_code == 0);
  CHECK(r1.output.find("BCS 1") != std::string::npos);

  for (const char* suffix :
       {"_archive.csv", "_front.csv", "_bcs.txt", "_manifest.json"})
    CHECK(fs::exists(out1 / (std::string("case1_theta-dea") + suffix)));

  const CliResult r2 = run_cli(base + out2.string());
  CHECK(r2.exit_code == 0);
  for (const char* suffix : {"_archive.csv", "_front.csv", "_bcs.txt"}) {
    const std::string name = std::string("case1_theta-dea") + suffix;
    CHECK(slurp(out1 / name) == slurp(out2 / name));
  }

  // The manifest reconstructs the run: seed, algorithm, artifact list.
  const json manifest = json::parse(slurp(out1 / "case1_theta-dea_manifest.json"));
  CHECK(manifest["config"]["seed"] == 7);
  CHECK(manifest["config"]["population_size"] == 20);
  for (const auto& a : manifest["artifacts"])
    CHECK(fs::exists(out1 / a.get<std::string>()));

  fs::remove_all(out1);
  fs::remove_all(out2);
}

TEST_CASE("solve with the baseline algorithm shares the file schema") {
  const fs::path out = fresh_dir("chpeed_cli_nsga");
  const CliResult r = run_cli("solve " + data_path("case2.json") + kFast +
                              "--seed 3 --algorithm nsga-ii --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  const std::string archive = slurp(out / "case2_nsga-ii_archive.csv");
  CHECK(archive.rfind("cost_usd,emission_kg,loss_mw,", 0) == 0);
  fs::remove_all(out);
}

TEST_CASE("exit codes distinguish failure classes") {
  // Missing file: parse error, no artifacts.
  const fs::path out = fresh_dir("chpeed_cli_missing");
  CHECK(run_cli("solve /nonexistent.json --out " + out.string()).exit_code ==
        2);
  CHECK_FALSE(fs::exists(out));

  // Validation error: flag contradiction (odd population).
  CHECK(run_cli("solve " + data_path("case1.json") + " --pop 21 --out " +
                out.string())
            .exit_code == 3);

  // Infeasible case: demand beyond capacity.
  const fs::path bad = fs::temp_directory_path() / "chpeed_bad_case.json";
  json j = json::parse(slurp(data_path("case1.json")));
  j["p_demand_mw"] = 9999.0;
  {
    std::ofstream f(bad);
    f << j.dump();
  }
  CHECK(run_cli("solve " + bad.string() + kFast + "--out " + out.string())
            .exit_code == 4);
  fs::remove(bad);
  fs::remove_all(out);
}

TEST_CASE("environment variable supplies the default output directory") {
  const fs::path out = fresh_dir("chpeed_cli_env");
  const CliResult r =
      run_cli("solve " + data_path("case1.json") + kFast + "--seed 1",
              "CHPEED_OUT_DIR=" + out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "case1_theta-dea_archive.csv"));
  fs::remove_all(out);
}

TEST_CASE("config file loads and flags take precedence") {
  const fs::path cfg = fs::temp_directory_path() / "chpeed_cfg.json";
  {
    std::ofstream f(cfg);
    f << R"({"population_size": 20, "max_iterations": 5, "seed": 42})";
  }
  const fs::path out = fresh_dir("chpeed_cli_cfg");
  const CliResult r =
      run_cli("solve " + data_path("case1.json") + " --config " +
              cfg.string() + " --seed 9 --out " + out.string());
  CHECK(r.exit_code == 0);
  const json manifest = json::parse(slurp(out / "case1_theta-dea_manifest.json"));
  CHECK(manifest["config"]["seed"] == 9);                // flag wins
  CHECK(manifest["config"]["population_size"] == 20);    // file applies
  fs::remove(cfg);
  fs::remove_all(out);
}

TEST_CASE("validate prints the case composition") {
  const CliResult r = run_cli("validate " + data_path("case1.json"));
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("N_p=1") != std::string::npos);
  CHECK(r.output.find("N_c=3") != std::string::npos);
  CHECK(r.output.find("feasible") != std::string::npos);

  const CliResult r2 = run_cli("validate /nonexistent.json");
  CHECK(r2.exit_code == 2);
}

TEST_CASE("compare emits a metric table") {
  const fs::path out = fresh_dir("chpeed_cli_cmp");
  const CliResult r = run_cli("compare " + data_path("case1.json") + kFast +
                              "--seed 5 --runs 2 --out " + out.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(out / "case1_metrics.csv");
  CHECK(csv.rfind("algorithm,metric,average,best,worst\n", 0) == 0);
  CHECK(csv.find("theta-dea,igd,") != std::string::npos);
  CHECK(csv.find("theta-dea,spread,") != std::string::npos);
  CHECK(csv.find("nsga-ii,igd,") != std::string::npos);
  CHECK(csv.find("nsga-ii,spread,") != std::string::npos);

  // Reproducible under a fixed master seed.
  const fs::path out2 = fresh_dir("chpeed_cli_cmp2");
  run_cli("compare " + data_path("case1.json") + kFast +
          "--seed 5 --runs 2 --out " + out2.string());
  CHECK(slurp(out2 / "case1_metrics.csv") == csv);
  fs::remove_all(out);
  fs::remove_all(out2);
}

TEST_CASE("dynamic case writes per-interval artifacts") {
  const fs::path dyn = fs::temp_directory_path() / "chpeed_dyn_case.json";
  json j = json::parse(slurp(data_path("case1.json")));
  j["name"] = "dyncase";
  j["p_demand_mw"] = {300.0, 290.0, 305.0};
  for (auto& u : j["power_units"]) {
    u["ramp_up_mw"] = 30.0;
    u["ramp_down_mw"] = 30.0;
  }
  for (auto& u : j["chp_units"]) {
    u["ramp_up_mw"] = 30.0;
    u["ramp_down_mw"] = 30.0;
  }
  {
    std::ofstream f(dyn);
    f << j.dump();
  }
  const fs::path out = fresh_dir("chpeed_cli_dyn");
  const CliResult r =
      run_cli("solve " + dyn.string() + kFast + "--seed 2 --out " +
              out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "dyncase_theta-dea_intervals.csv"));
  CHECK(fs::exists(out / "dyncase_theta-dea_bcs1_schedule.csv"));
  CHECK(fs::exists(out / "dyncase_theta-dea_bcs2_schedule.csv"));
  const std::string intervals = slurp(out / "dyncase_theta-dea_intervals.csv");
  CHECK(intervals.rfind("interval,bcs,cost_usd,emission_kg,loss_mw\n", 0) ==
        0);
  // One row per (interval, BCS chain) pair plus the header.
  CHECK(std::count(intervals.begin(), intervals.end(), '\n') == 7);
  fs::remove(dyn);
  fs::remove_all(out);
}
