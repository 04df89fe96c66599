#include "sdwn/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <thread>

#include "sdwn/cellular/baseline.hpp"
#include "sdwn/cellular/oracle.hpp"
#include "sdwn/core/deployment.hpp"
#include "sdwn/core/random.hpp"
#include "sdwn/metrics/metrics.hpp"
#include "sdwn/wlan/baseline.hpp"
#include "sdwn/wlan/oracle.hpp"

namespace sdwn::harness {

namespace {

struct Instance {
  std::vector<User> users;
  control::MeasurementReport report;
  std::vector<control::SliceConstraint> constraints;
  std::vector<SliceSpec> slices;  // reservations as requested, before any scaling
  std::vector<bool> edge_flags;
};

Instance build_instance(const ScenarioConfig& cfg, std::size_t trial) {
  const auto seeds = TrialSeeds::from(cfg.master_seed, trial);
  const bool is_wlan = cfg.scenario_kind == control::RanKind::wlan;
  const DeploymentParams dep{cfg.deployment.lambda_mean};
  Instance in;
  if (cfg.users) {
    for (const auto& u : *cfg.users) in.users.push_back({in.users.size(), u.position, u.slice_id});
  } else {
    if (!is_wlan && cfg.deployment.edge_fraction > 0.0) {
      in.users = generate_edge_weighted_users(cfg.region, cfg.layout, dep, cfg.deployment.edge_fraction,
                                              cellular::cell_edge_radius(cfg.layout, cfg.deployment.edge_gamma),
                                              seeds.deployment);
    } else {
      in.users = generate_ppp_users(cfg.region, dep, cfg.layout.size(), seeds.deployment);
    }
    apply_slices(in.users, assign_slices(in.users, cfg.load_split, seeds.slices));
  }

  control::RanState state;
  state.kind = cfg.scenario_kind;
  state.topology.region = cfg.region;
  state.topology.aps = cfg.layout;
  state.topology.users = in.users;
  state.channel = cfg.channel;
  state.channel.fading_seed = seeds.fading;
  state.rate_table = cfg.rate_table;
  state.subcarriers = cfg.subcarriers;
  in.report = control::lrm_report(state);

  std::vector<std::size_t> population(kSliceCount, 0);
  for (const auto& u : in.users) ++population[u.slice_id];
  const double capacity = is_wlan ? wlan::max_total_airtime(in.report.rates) : 0.0;
  std::vector<double> reservations(kSliceCount, 0.0);
  for (const auto& s : cfg.slices) {
    control::SlaSpec sla{s.slice_id, s.guarantee_kind, s.guarantee_value, s.isolation_level};
    if (s.relative) sla.guarantee_value *= capacity;
    if (population[s.slice_id] == 0) sla.guarantee_value = 0.0;
    in.constraints.push_back(control::vrm_translate(sla, cfg.scenario_kind));
    reservations[s.slice_id] = sla.guarantee_value;
  }
  in.slices = slices_from_users(in.users, kSliceCount, reservations);
  if (!is_wlan && cfg.layout.size() >= 2) {
    in.edge_flags = cellular::classify_cell_edge(in.users, cfg.layout, cfg.deployment.edge_gamma);
  }
  return in;
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> wlan_user_throughput(const wlan::TauMatrix& tau, const Instance& in) {
  return to_vector(wlan::wlan_throughput(tau, in.report.rates, in.slices).per_user_per_ap.rowwise().sum());
}

control::ResourceBlockSchedule schedule_sdwn(const ScenarioConfig& cfg, const Instance& in) {
  control::ScheduleRequest req;
  req.constraints = in.constraints;
  if (cfg.scenario_kind == control::RanKind::wlan) {
    req.wlan_warm_starts.push_back(wlan::max_snr_wlan(in.report.snr, in.report.rates).tau);
  } else {
    req.cellular_warm_starts.push_back(
        cellular::max_snr_cellular(in.report.gains, in.report.budgets, in.report.noise_power));
  }
  control::SdCrm crm({cfg.wlan_solver, cfg.cellular_solver});
  try {
    return crm.schedule({req}, {in.report}).front();
  } catch (const control::InfeasibleSla&) {
    // strict reservations cannot hold; record the best scaled-down schedule instead
    for (auto& c : req.constraints) c.scalable = true;
    return crm.schedule({req}, {in.report}).front();
  }
}

}  // namespace

TrialOutcome run_trial(const ScenarioConfig& cfg, Policy policy, std::size_t trial) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance in = build_instance(cfg, trial);
  const bool is_wlan = cfg.scenario_kind == control::RanKind::wlan;

  TrialOutcome out;
  auto& r = out.record;
  r.scenario_id = cfg.scenario_id;
  r.trial = trial;
  r.policy = policy;
  r.lambda_mean = cfg.deployment.lambda_mean;
  r.rho1 = cfg.load_split.rho1;
  r.solver_status = policy == Policy::max_snr ? "baseline" : "optimal";

  if (in.users.empty()) {
    // nothing to schedule
  } else if (policy == Policy::max_snr) {
    if (is_wlan) {
      out.user_rates = wlan_user_throughput(wlan::max_snr_wlan(in.report.snr, in.report.rates).tau, in);
    } else {
      const auto a = cellular::max_snr_cellular(in.report.gains, in.report.budgets, in.report.noise_power);
      out.user_rates = to_vector(cellular::user_rates(a, in.report.gains, in.report.noise_power));
    }
  } else {
    const auto schedule = schedule_sdwn(cfg, in);
    control::SdLrm lrm(schedule.ran_id, cfg.scenario_kind);
    lrm.apply(schedule);
    if (schedule.status == control::ScheduleStatus::scaled) r.solver_status = "scaled_infeasible";
    r.scaling_factor = schedule.scaling_factor;
    if (is_wlan) {
      out.user_rates = wlan_user_throughput(std::get<wlan::TauMatrix>(schedule.allocation), in);
    } else {
      const auto& a = std::get<cellular::CellularAllocation>(schedule.allocation);
      out.user_rates = to_vector(cellular::user_rates(a, in.report.gains, in.report.noise_power));
    }
  }
  out.edge_flags = in.edge_flags;

  const auto m = metrics::aggregate_trial(out.user_rates, in.slices, out.edge_flags);
  r.total_throughput = m.total_throughput;
  r.sp1_throughput = m.per_sp_throughput[0];
  r.sp2_throughput = m.per_sp_throughput[1];
  r.jain_index = m.jain_index;
  r.edge_median_rate = m.edge_median_rate;
  r.center_median_rate = m.center_median_rate;
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SDWN_SIM_THREADS"); env && *env) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (*end != '\0' || cap <= 0) throw ConfigError("SDWN_SIM_THREADS must be a positive integer");
    n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  threads = std::min(std::max<std::size_t>(threads, 1), std::max<std::size_t>(n, 1));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<TrialOutcome> run_outcomes(const ScenarioConfig& cfg, Policy policy, const RunOptions& options) {
  cfg.validate();
  std::vector<TrialOutcome> out(cfg.trials);
  parallel_for(cfg.trials, worker_count(options.threads), [&](std::size_t t) { out[t] = run_trial(cfg, policy, t); });
  return out;
}

std::vector<ResultRecord> run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  std::vector<ResultRecord> out;
  for (auto& o : run_outcomes(cfg, cfg.policy, options)) out.push_back(std::move(o.record));
  return out;
}

namespace {

double parse_number(const std::string& s, const std::string& spec) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || !std::isfinite(v)) {
    throw ConfigError("sweep parameter '" + spec + "': '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

SweepParam parse_sweep_param(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw ConfigError("sweep parameter '" + spec + "': expected NAME=START:END:STEP");
  SweepParam p;
  p.name = spec.substr(0, eq);
  if (p.name != "lambda_mean" && p.name != "rho1" && p.name != "edge_fraction") {
    throw ConfigError("sweep parameter '" + p.name + "': only lambda_mean, rho1 and edge_fraction can be swept");
  }
  std::vector<std::string> parts;
  std::size_t from = eq + 1;
  for (std::size_t c = spec.find(':', from); c != std::string::npos; c = spec.find(':', from)) {
    parts.push_back(spec.substr(from, c - from));
    from = c + 1;
  }
  parts.push_back(spec.substr(from));
  if (parts.size() != 3) throw ConfigError("sweep parameter '" + spec + "': expected NAME=START:END:STEP");
  const double start = parse_number(parts[0], spec);
  const double end = parse_number(parts[1], spec);
  const double step = parse_number(parts[2], spec);
  if (!(step > 0.0)) throw ConfigError("sweep parameter '" + spec + "': step must be positive");
  if (end < start) throw ConfigError("sweep parameter '" + spec + "': end must not be below start");
  const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
  for (std::size_t k = 0; k < count; ++k) p.values.push_back(start + static_cast<double>(k) * step);
  return p;
}

ScenarioConfig with_param(ScenarioConfig cfg, const std::string& name, double value) {
  if (name == "lambda_mean") {
    cfg.deployment.lambda_mean = value;
  } else if (name == "rho1") {
    cfg.load_split.rho1 = value;
  } else if (name == "edge_fraction") {
    cfg.deployment.edge_fraction = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
  return cfg;
}

std::vector<ResultRecord> sweep(const ScenarioConfig& cfg, const std::vector<SweepParam>& params,
                                const RunOptions& options) {
  if (params.empty()) throw ConfigError("sweep: at least one parameter required");
  std::vector<ScenarioConfig> points{cfg};
  for (const auto& p : params) {
    if (p.values.empty()) throw ConfigError("sweep parameter '" + p.name + "': empty grid");
    for (std::size_t k = 1; k < p.values.size(); ++k) {
      if (!(p.values[k] > p.values[k - 1])) {
        throw ConfigError("sweep parameter '" + p.name + "': values must be strictly increasing");
      }
    }
    std::vector<ScenarioConfig> next;
    for (const auto& base : points) {
      for (double v : p.values) next.push_back(with_param(base, p.name, v));
    }
    points = std::move(next);
  }
  for (const auto& pt : points) {
    try {
      pt.validate();
    } catch (const ConfigError& e) {
      throw ConfigError("sweep grid point (lambda_mean " + std::to_string(pt.deployment.lambda_mean) + ", rho1 " +
                        std::to_string(pt.load_split.rho1) + ") rejected: " + e.what());
    }
  }

  constexpr Policy kPolicies[] = {Policy::sdwn, Policy::max_snr};
  const std::size_t per_point = 2 * cfg.trials;
  std::vector<ResultRecord> rows(points.size() * per_point);
  parallel_for(rows.size(), worker_count(options.threads), [&](std::size_t i) {
    const std::size_t point = i / per_point;
    const std::size_t policy = (i % per_point) / cfg.trials;
    const std::size_t trial = i % cfg.trials;
    rows[i] = run_trial(points[point], kPolicies[policy], trial).record;
  });
  return rows;
}

OracleReport verify_oracle(const ScenarioConfig& cfg, std::optional<double> grid_step) {
  cfg.validate();
  const Instance in = build_instance(cfg, 0);
  OracleReport rep;
  rep.kind = cfg.scenario_kind;
  if (cfg.scenario_kind == control::RanKind::wlan) {
    const double step = grid_step.value_or(cfg.wlan_solver.oracle_grid_step);
    if (!(step > 0.0 && step <= 0.5)) throw ConfigError("oracle grid step must lie in (0, 0.5]");
    const wlan::WlanProblem p{in.report.rates, in.slices,
                              {wlan::max_snr_wlan(in.report.snr, in.report.rates).tau}};
    const auto orc = wlan::brute_force_tau_oracle(p, step, cfg.wlan_solver.feasibility_tolerance, cfg.wlan_solver.scope);
    const auto sol = wlan::optimize_tau(p, cfg.wlan_solver);
    const double scale = in.report.rates.size() && in.report.rates.maxCoeff() > 0.0 ? in.report.rates.maxCoeff() : 1.0;
    rep.solver_feasible = sol.status == wlan::WlanStatus::optimal;
    rep.oracle_feasible = orc.feasible;
    rep.solver_objective = sol.objective;
    rep.oracle_objective = orc.objective;
    rep.solver_scaling = sol.scaling_factor;
    rep.oracle_scaling = orc.scaling_factor;
    rep.gap = (orc.objective - sol.objective) / scale;
    rep.tolerance = 1e-2;
    rep.oracle_points = orc.points;
  } else {
    if (grid_step) throw ConfigError("--grid-step only applies to WLAN scenarios");
    cellular::CellularProblem p;
    p.gains = in.report.gains;
    p.budgets = in.report.budgets;
    p.noise_power = in.report.noise_power;
    p.slices = in.slices;
    p.warm_starts = {cellular::max_snr_cellular(p.gains, p.budgets, p.noise_power)};
    const auto orc = cellular::brute_force_cellular_oracle(p, cfg.cellular_solver);
    const auto sol = cellular::solve_joint_allocation(p, cfg.cellular_solver);
    rep.solver_feasible = sol.status == cellular::CellularStatus::optimal;
    rep.oracle_feasible = orc.feasible;
    rep.solver_objective = sol.utility;
    rep.oracle_objective = orc.utility;
    rep.solver_scaling = sol.scaling_factor;
    rep.oracle_scaling = orc.scaling_factor;
    const double denom = std::abs(orc.utility) > 0.0 ? std::abs(orc.utility) : 1.0;
    rep.gap = (orc.utility - sol.utility) / denom;
    rep.tolerance = 0.05;
    rep.oracle_points = orc.points;
  }
  if (rep.solver_feasible != rep.oracle_feasible) {
    rep.passed = false;
  } else if (rep.solver_feasible) {
    rep.passed = rep.gap <= rep.tolerance;
  } else {
    rep.gap = 0.0;
    rep.passed = std::abs(rep.solver_scaling - rep.oracle_scaling) <= rep.scaling_tolerance;
  }
  return rep;
}

}  // namespace sdwn::harness
