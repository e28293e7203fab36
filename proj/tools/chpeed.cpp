#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chpeed/casedata/case_io.hpp"
#include "chpeed/casedata/run_config.hpp"
#include "chpeed/decision/grp.hpp"
#include "chpeed/metrics/indicators.hpp"
#include "chpeed/model/evaluate.hpp"
#include "chpeed/model/geometry.hpp"
#include "chpeed/optimizer/evolve.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace chpeed;

namespace {

// Exit codes, one per failure class.
constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInfeasible = 4;
constexpr int kExitRuntime = 5;

struct CommonOpts {
  std::string case_path;
  std::string config_path;
  std::string out_dir;
  // Flag overrides; negative/empty means "not given".
  long long seed = -1;
  int pop = -1;
  int iters = -1;
  double theta = -1.0;
  std::string algorithm;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_out = true) {
  cmd->add_option("case", o.case_path, "Case file (JSON)")->required();
  cmd->add_option("--config", o.config_path, "Run-config file (JSON)");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--pop", o.pop, "Population size");
  cmd->add_option("--iters", o.iters, "Iteration count");
  cmd->add_option("--theta", o.theta, "Theta-dominance penalty");
  cmd->add_option("--algorithm", o.algorithm,
                  "Algorithm: theta-dea | nsga-ii");
  if (with_out) cmd->add_option("--out", o.out_dir, "Output directory");
}

// Precedence: defaults < config file < flags.
RunConfig effective_config(const CommonOpts& o) {
  RunConfig cfg;
  if (!o.config_path.empty()) cfg = load_run_config(o.config_path);
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  if (o.pop > 0) cfg.population_size = o.pop;
  if (o.iters >= 0) cfg.max_iterations = o.iters;
  if (o.theta > 0.0) cfg.theta = o.theta;
  if (!o.algorithm.empty())
    cfg.algorithm = algorithm_from_string(o.algorithm);
  cfg.validate();
  return cfg;
}

fs::path resolve_out_dir(const CommonOpts& o) {
  if (!o.out_dir.empty()) return o.out_dir;
  if (const char* env = std::getenv("CHPEED_OUT_DIR")) return env;
  return "chpeed-out";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_front_csv(const fs::path& path,
                     const std::vector<DispatchSolution>& sols) {
  std::ostringstream out;
  out.precision(12);
  out << "cost_usd,emission_kg\n";
  for (const auto& s : sols) out << s.cost << ',' << s.emission << "\n";
  write_text(path, out.str());
}

int cmd_solve(const CommonOpts& opts) {
  const DispatchCase cs = load_case(opts.case_path);
  const RunConfig cfg = effective_config(opts);
  const fs::path out_dir = resolve_out_dir(opts);
  fs::create_directories(out_dir);

  const std::string stem = cs.name + "_" + to_string(cfg.algorithm);
  std::vector<std::string> artifacts;
  auto artifact = [&](const std::string& suffix) {
    artifacts.push_back(stem + suffix);
    return out_dir / artifacts.back();
  };

  if (cs.n_intervals == 1) {
    const ParetoArchive archive = run_algorithm(cs, cfg);
    const BcsReport bcs = select_bcs(archive, cfg);

    save_archive_csv(cs, archive.solutions, artifact("_archive.csv"));
    write_front_csv(artifact("_front.csv"), archive.solutions);
    const std::string report = format_bcs_report(cs, bcs);
    write_text(artifact("_bcs.txt"), report);
    std::cout << report;
  } else {
    // Dynamic dispatch: solve interval by interval; each BCS chain carries
    // its own ramp windows around the previous interval's pick.
    std::ostringstream intervals;
    intervals.precision(12);
    intervals << "interval,bcs,cost_usd,emission_kg,loss_mw\n";
    std::vector<DispatchSolution> chain_bcs1, chain_bcs2;
    for (int t = 0; t < cs.n_intervals; ++t) {
      for (int which : {1, 2}) {
        auto& chain = which == 1 ? chain_bcs1 : chain_bcs2;
        const DispatchSolution* prev = t > 0 ? &chain.back() : nullptr;
        const ParetoArchive archive = run_algorithm(cs, cfg, t, prev);
        const BcsReport bcs = select_bcs(archive, cfg);
        const BcsCluster& pick =
            bcs.clusters.size() >= static_cast<std::size_t>(which)
                ? bcs.clusters[which - 1]
                : bcs.clusters.front();
        chain.push_back(pick.best);
        intervals << t << ',' << which << ',' << pick.best.cost << ','
                  << pick.best.emission << ',' << pick.best.loss_mw << "\n";
      }
    }
    write_text(artifact("_intervals.csv"), intervals.str());
    save_archive_csv(cs, chain_bcs1, artifact("_bcs1_schedule.csv"));
    save_archive_csv(cs, chain_bcs2, artifact("_bcs2_schedule.csv"));
    std::cout << "dynamic case: " << cs.n_intervals
              << " intervals solved, schedules written\n";
  }

  json manifest{{"case_path", fs::absolute(opts.case_path).string()},
                {"output_dir", fs::absolute(out_dir).string()},
                {"config", json::parse(run_config_to_json(cfg))},
                {"artifacts", artifacts}};
  write_text(out_dir / (stem + "_manifest.json"), manifest.dump(2) + "\n");
  return kExitOk;
}

int cmd_compare(const CommonOpts& opts, int runs) {
  const DispatchCase cs = load_case(opts.case_path);
  const RunConfig cfg = effective_config(opts);
  const fs::path out_dir = resolve_out_dir(opts);
  fs::create_directories(out_dir);

  const MetricReport report = multi_run_report(
      cs, cfg, {Algorithm::kThetaDea, Algorithm::kNsga2}, runs);
  const std::string csv = metric_report_csv(report);
  write_text(out_dir / (cs.name + "_metrics.csv"), csv);
  std::cout << csv;
  return kExitOk;
}

int cmd_validate(const std::string& case_path) {
  // Enumerates problems rather than failing on the first one.
  DispatchCase cs;
  try {
    cs = load_case(case_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }

  std::cout << "case " << cs.name << ": N_p=" << cs.n_power()
            << " N_c=" << cs.n_chp() << " N_h=" << cs.n_heat()
            << " N_T=" << cs.n_intervals << "\n";
  std::cout << "loss model: " << (cs.loss.present ? "present" : "absent")
            << "\n";
  for (int j = 0; j < cs.n_chp(); ++j) {
    const auto& u = cs.chp_units[j];
    std::cout << "FOR " << (u.name.empty() ? std::to_string(j + 1) : u.name)
              << ": " << u.for_vertices.size() << " vertices, power ["
              << u.power_min() << ", " << u.power_max() << "] MW, heat ["
              << u.heat_min() << ", " << u.heat_max() << "] MWth\n";
  }

  int problems = 0;
  for (int t = 0; t < cs.n_intervals; ++t) {
    try {
      Encoding enc(cs, t);
      enc.diagnose_feasibility();
      std::cout << "interval " << t << ": demand " << cs.p_demand(t)
                << " MW / " << cs.h_demand(t) << " MWth, feasible\n";
    } catch (const InfeasibleCaseError& e) {
      std::cout << "interval " << t << ": INFEASIBLE - " << e.what() << "\n";
      ++problems;
    }
  }
  return problems == 0 ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Combined heat and power economic emission dispatch engine"};
  app.require_subcommand(1);

  CommonOpts solve_opts, compare_opts;
  int runs = 30;
  std::string validate_path;

  CLI::App* solve = app.add_subcommand(
      "solve", "Optimize a case and write archive, front and BCS artifacts");
  add_common(solve, solve_opts);

  CLI::App* compare = app.add_subcommand(
      "compare", "Multi-run IGD/Spread comparison of theta-DEA vs NSGA-II");
  add_common(compare, compare_opts);
  compare->add_option("--runs", runs, "Independent runs per algorithm");

  CLI::App* validate =
      app.add_subcommand("validate", "Load and diagnose a case file");
  validate->add_option("case", validate_path, "Case file (JSON)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(solve_opts);
    if (compare->parsed()) return cmd_compare(compare_opts, runs);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SchemaVersionError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InfeasibleCaseError& e) {
    std::cerr << "infeasible case: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
