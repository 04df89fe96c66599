#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sdwn/harness/config.hpp"
#include "sdwn/harness/csv.hpp"
#include "sdwn/harness/runner.hpp"
#include "sdwn/wlan/oracle.hpp"

using namespace sdwn;
using namespace sdwn::harness;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kOracleGap = 3;

void write_rows(const std::string& path, const std::vector<ResultRecord>& rows, bool timing) {
  if (path == "-") {
    write_csv(std::cout, rows, timing);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  write_csv(out, rows, timing);
  if (!out) throw ConfigError("error while writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliced WLAN / OFDMA resource manager simulator"};
  app.require_subcommand(1);

  std::string config_path, out_path = "-", in_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> params;
  std::optional<double> grid_step;
  bool timing = false;
  std::string stat, filter = "all";

  auto* run = app.add_subcommand("run", "Run every trial of a scenario under its policy");
  run->add_option("--config", config_path, "Scenario config")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out_path, "Output CSV ('-' for stdout)")->required();
  run->add_flag("--timing", timing, "Record wall time per trial (output no longer byte-stable)");

  auto* sw = app.add_subcommand("sweep", "Grid sweep over lambda_mean / rho1 / edge_fraction, both policies");
  sw->add_option("--config", config_path, "Scenario config")->required();
  sw->add_option("--param", params, "NAME=START:END:STEP (repeatable; first varies slowest)")->required();
  sw->add_option("--seed", seed, "Override the master seed");
  sw->add_option("--out", out_path, "Output CSV ('-' for stdout)")->required();
  sw->add_flag("--timing", timing, "Record wall time per trial (output no longer byte-stable)");

  auto* orc = app.add_subcommand("oracle", "Compare the solver with brute force on a tiny instance");
  orc->add_option("--config", config_path, "Scenario config with an explicit users list")->required();
  orc->add_option("--grid-step", grid_step, "WLAN grid step (default from the config)");

  auto* rep = app.add_subcommand("report", "Summarize a results CSV per (policy, lambda_mean, rho1)");
  rep->add_option("--in", in_path, "Results CSV")->required();
  rep->add_option("--stat", stat, "Statistic")->required()->check(CLI::IsMember({"cdf", "median", "jain"}));
  rep->add_option("--filter", filter, "Column: edge/center medians or total throughput")
      ->check(CLI::IsMember({"edge", "center", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    if (*run || *sw) {
      auto cfg = load_config(config_path);
      if (seed) cfg.master_seed = *seed;
      if (*run) {
        write_rows(out_path, run_scenario(cfg), timing);
      } else {
        std::vector<SweepParam> grid;
        for (const auto& p : params) grid.push_back(parse_sweep_param(p));
        write_rows(out_path, sweep(cfg, grid), timing);
      }
      return kOk;
    }
    if (*orc) {
      const auto r = verify_oracle(load_config(config_path), grid_step);
      std::printf("kind              %s\n", r.kind == control::RanKind::wlan ? "wlan" : "cellular");
      std::printf("solver feasible   %s\n", r.solver_feasible ? "yes" : "no");
      std::printf("oracle feasible   %s\n", r.oracle_feasible ? "yes" : "no");
      std::printf("solver objective  %.9g\n", r.solver_objective);
      std::printf("oracle objective  %.9g\n", r.oracle_objective);
      if (r.solver_feasible && r.oracle_feasible) {
        std::printf("gap               %.3g (tolerance %.3g)\n", r.gap, r.tolerance);
      } else {
        std::printf("scaling factors   solver %.4f, oracle %.4f (tolerance %.3g)\n", r.solver_scaling,
                    r.oracle_scaling, r.scaling_tolerance);
      }
      std::printf("oracle points     %llu\n", static_cast<unsigned long long>(r.oracle_points));
      std::printf("result            %s\n", r.passed ? "PASS" : "FAIL");
      return r.passed ? kOk : kOracleGap;
    }
    std::ifstream in(in_path);
    if (!in) throw ConfigError("cannot read " + in_path);
    const auto rows = read_csv(in);
    const auto s = stat == "cdf" ? ReportStat::cdf : stat == "median" ? ReportStat::median : ReportStat::jain;
    const auto f = filter == "edge" ? ReportFilter::edge : filter == "center" ? ReportFilter::center : ReportFilter::all;
    write_report(std::cout, rows, s, f);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
