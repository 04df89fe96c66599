#include "sdwn/cellular/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sdwn::cellular {

namespace {

struct Search {
  const CellularProblem& p;
  const CellularSolverOptions& o;
  std::vector<double> levels;  // positive levels as fractions of the budget
  CellularAllocation work;
  std::vector<double> used;
  CellularOracleResult result;
  double best_scaling = 0.0;

  void slot(std::size_t index) {
    const std::size_t n_sc = work.subcarriers();
    if (index == work.bss() * n_sc) {
      leaf();
      return;
    }
    const std::size_t b = index / n_sc;
    const auto bi = static_cast<Eigen::Index>(b);
    const auto ni = static_cast<Eigen::Index>(index % n_sc);
    work.owner(bi, ni) = kUnassigned;
    work.power(bi, ni) = 0.0;
    slot(index + 1);
    for (std::size_t u = 0; u < work.users(); ++u) {
      if (work.association[u] != static_cast<int>(b)) continue;
      for (double frac : levels) {
        const double pw = frac * p.budgets[b];
        if (used[b] + pw > p.budgets[b] * (1.0 + 1e-12)) break;
        work.owner(bi, ni) = static_cast<int>(u);
        work.power(bi, ni) = pw;
        used[b] += pw;
        slot(index + 1);
        used[b] -= pw;
      }
    }
    work.owner(bi, ni) = kUnassigned;
    work.power(bi, ni) = 0.0;
  }

  void leaf() {
    ++result.points;
    const Eigen::VectorXd r = user_rates(work, p.gains, p.noise_power);
    double scaling = std::numeric_limits<double>::infinity();
    for (const auto& s : p.slices) {
      if (!(s.reservation > 0.0)) continue;
      double t = 0.0;
      for (std::size_t u : s.user_ids) t += r(static_cast<Eigen::Index>(u));
      scaling = std::min(scaling, (t + o.reservation_tolerance) / s.reservation);
    }
    best_scaling = std::max(best_scaling, scaling);
    if (!meets_reservations(r, p.slices, 1.0, o.reservation_tolerance)) return;
    const double u = cellular_utility(r, o.objective, o.pf_floor);
    if (!result.feasible || u > result.utility + 1e-12 * std::max(1.0, std::abs(result.utility))) {
      result.feasible = true;
      result.allocation = work;
      result.utility = u;
      result.total_rate = r.sum();
    }
  }
};

}  // namespace

CellularOracleResult brute_force_cellular_oracle(const CellularProblem& problem,
                                                 const CellularSolverOptions& options) {
  problem.validate();
  options.validate();
  const auto& g = problem.gains;
  if (g.users() > kOracleMaxUsers || g.bss() > kOracleMaxBss || g.subcarriers() > kOracleMaxSubcarriers ||
      options.power_levels > kOracleMaxPowerLevels) {
    throw InstanceTooLarge("cellular oracle: at most " + std::to_string(kOracleMaxUsers) + " users, " +
                           std::to_string(kOracleMaxBss) + " BSs, " + std::to_string(kOracleMaxSubcarriers) +
                           " subcarriers and " + std::to_string(kOracleMaxPowerLevels) + " power levels");
  }
  if (options.power_levels < 2) throw ConfigError("cellular oracle: needs at least the levels {0, P}");

  Search s{problem, options, {}, CellularAllocation::empty(g.users(), g.bss(), g.subcarriers()),
           std::vector<double>(g.bss(), 0.0), {}, 0.0};
  for (int k = 1; k < options.power_levels; ++k) {
    s.levels.push_back(static_cast<double>(k) / static_cast<double>(options.power_levels - 1));
  }

  // Association odometer, user 0 most significant.
  std::vector<int>& assoc = s.work.association;
  std::fill(assoc.begin(), assoc.end(), 0);
  if (g.bss() == 0) {
    s.leaf();
  } else {
    while (true) {
      s.slot(0);
      std::size_t pos = assoc.size();
      while (pos > 0) {
        --pos;
        if (++assoc[pos] < static_cast<int>(g.bss())) break;
        assoc[pos] = 0;
        if (pos == 0) {
          pos = assoc.size() + 1;
          break;
        }
      }
      if (assoc.empty() || pos == assoc.size() + 1) break;
    }
  }

  CellularOracleResult out = std::move(s.result);
  out.scaling_factor = out.feasible ? 1.0 : std::min(1.0, std::isfinite(s.best_scaling) ? s.best_scaling : 1.0);
  if (out.feasible) out.allocation.validate(problem.budgets);
  return out;
}

}  // namespace sdwn::cellular
