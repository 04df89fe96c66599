#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sdwn/harness/config.hpp"

namespace sdwn::harness {

struct ResultRecord {
  std::string scenario_id;
  std::size_t trial = 0;
  Policy policy = Policy::sdwn;
  double lambda_mean = 0.0;
  double rho1 = 0.0;
  double total_throughput = 0.0;
  double sp1_throughput = 0.0;
  double sp2_throughput = 0.0;
  double jain_index = 1.0;
  double edge_median_rate = 0.0;
  double center_median_rate = 0.0;
  std::string solver_status;  // optimal | scaled_infeasible | baseline
  double wall_time = 0.0;     // seconds
  double scaling_factor = 1.0;
};

/// A record plus the per-user detail behind it (rates and edge flags).
struct TrialOutcome {
  ResultRecord record;
  std::vector<double> user_rates;
  std::vector<bool> edge_flags;  // empty for WLAN
};

/// Runs one replication of `config` under `policy`.
TrialOutcome run_trial(const ScenarioConfig& config, Policy policy, std::size_t trial);

struct RunOptions {
  std::size_t threads = 0;  // 0: hardware concurrency capped by SDWN_SIM_THREADS
};

/// Worker count: `requested` (or the hardware concurrency when 0), capped by
/// the SDWN_SIM_THREADS environment variable when it holds a positive integer.
std::size_t worker_count(std::size_t requested);

/// Runs fn(0..n-1) on up to `threads` workers. Exceptions are rethrown after
/// all workers stop (the one with the lowest index wins).
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

std::vector<TrialOutcome> run_outcomes(const ScenarioConfig& config, Policy policy, const RunOptions& options = {});

/// All trials of config.policy, sorted by trial index.
std::vector<ResultRecord> run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

struct SweepParam {
  std::string name;  // lambda_mean | rho1 | edge_fraction
  std::vector<double> values;
};

/// Parses NAME=START:END:STEP into an inclusive grid.
SweepParam parse_sweep_param(const std::string& spec);

/// Config with `name` set to `value`.
ScenarioConfig with_param(ScenarioConfig config, const std::string& name, double value);

/// Cartesian grid over `params` (first parameter varies slowest), both policies,
/// every trial; rows in (grid point, policy, trial) order. Every grid point is
/// validated before anything runs.
std::vector<ResultRecord> sweep(const ScenarioConfig& config, const std::vector<SweepParam>& params,
                                const RunOptions& options = {});

struct OracleReport {
  control::RanKind kind = control::RanKind::wlan;
  bool solver_feasible = true;
  bool oracle_feasible = true;
  double solver_objective = 0.0;
  double oracle_objective = 0.0;
  double gap = 0.0;  // WLAN: absolute, normalized by the largest rate; cellular: relative
  double tolerance = 0.0;
  double solver_scaling = 1.0;
  double oracle_scaling = 1.0;
  double scaling_tolerance = 0.02;
  std::uint64_t oracle_points = 0;
  bool passed = false;
};

/// Solver against brute force on the config's explicit users (or trial 0's
/// draw). Throws InstanceTooLarge beyond the oracle limits.
OracleReport verify_oracle(const ScenarioConfig& config, std::optional<double> grid_step = std::nullopt);

}  // namespace sdwn::harness
