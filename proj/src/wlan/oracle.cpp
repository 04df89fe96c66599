#include "sdwn/wlan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace sdwn::wlan {

namespace {

struct Var {
  std::size_t user;
  std::size_t ap;
};

struct Row {
  int slice;
  int ap;  // -1: network average
  double beta;
};

// Direct O(n^2) evaluation, written independently of the optimizer's
// prefix/suffix gradient code.
void evaluate(const std::vector<Var>& vars, const std::vector<double>& x,
              const Eigen::MatrixXd& rates, const std::vector<int>& slice_of,
              const std::vector<Row>& rows, std::size_t aps, double& objective,
              std::vector<double>& airtime) {
  objective = 0.0;
  std::fill(airtime.begin(), airtime.end(), 0.0);
  for (std::size_t v = 0; v < vars.size(); ++v) {
    double success = x[v];
    for (std::size_t w = 0; w < vars.size(); ++w) {
      if (w != v && vars[w].ap == vars[v].ap) success *= 1.0 - x[w];
    }
    objective += rates(static_cast<Eigen::Index>(vars[v].user), static_cast<Eigen::Index>(vars[v].ap)) * success;
    for (std::size_t c = 0; c < rows.size(); ++c) {
      if (slice_of[vars[v].user] != rows[c].slice) continue;
      if (rows[c].ap >= 0) {
        if (static_cast<std::size_t>(rows[c].ap) == vars[v].ap) airtime[c] += success;
      } else {
        airtime[c] += success / static_cast<double>(aps);
      }
    }
  }
}

}  // namespace

TauOracleResult brute_force_tau_oracle(const WlanProblem& problem, double grid_step,
                                       double feasibility_tolerance, AirtimeScope scope) {
  problem.validate();
  const Eigen::MatrixXd& rates = problem.rates;
  const auto users = static_cast<std::size_t>(rates.rows());
  const auto aps = static_cast<std::size_t>(rates.cols());

  std::vector<Var> vars;
  for (std::size_t i = 0; i < users; ++i) {
    for (std::size_t a = 0; a < aps; ++a) {
      if (rates(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a)) > 0.0) vars.push_back({i, a});
    }
  }
  if (vars.size() > kOracleMaxVariables) {
    throw InstanceTooLarge("tau oracle: " + std::to_string(vars.size()) + " decision variables (limit " +
                           std::to_string(kOracleMaxVariables) + ")");
  }
  const double cells = std::round(1.0 / grid_step);
  if (!(grid_step > 0.0) || cells < 1.0 || std::abs(cells * grid_step - 1.0) > 1e-9) {
    throw ConfigError("tau oracle: grid step must divide 1");
  }
  const auto last_index = static_cast<long>(cells);
  const auto value = [&](long k) { return static_cast<double>(last_index - k) / cells; };

  std::vector<int> slice_of(users, -1);
  for (std::size_t k = 0; k < problem.slices.size(); ++k) {
    for (std::size_t u : problem.slices[k].user_ids) slice_of[u] = static_cast<int>(k);
  }
  std::vector<Row> rows;
  for (std::size_t k = 0; k < problem.slices.size(); ++k) {
    const double beta = problem.slices[k].reservation;
    if (!(beta > 0.0)) continue;
    if (scope == AirtimeScope::network_average) {
      rows.push_back({static_cast<int>(k), -1, beta});
    } else {
      for (std::size_t a = 0; a < aps; ++a) rows.push_back({static_cast<int>(k), static_cast<int>(a), beta});
    }
  }

  TauOracleResult out;
  out.tau = TauMatrix::zeros(users, aps);
  const double eps = feasibility_tolerance;
  if (vars.empty()) {
    out.feasible = rows.empty();
    out.scaling_factor = rows.empty() ? 1.0 : 0.0;
    for (const auto& r : rows) out.scaling_factor = std::min(out.scaling_factor, eps / r.beta);
    out.points = 1;
    return out;
  }

  const std::size_t free_count = vars.size() - 1;
  std::vector<long> idx(free_count, 0);
  std::vector<double> x(vars.size(), 0.0);
  std::vector<double> air0(rows.size()), air1(rows.size());
  double best_objective = -std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  double best_ratio = -std::numeric_limits<double>::infinity();
  const double tie = 1e-12 * std::max(1.0, rates.maxCoeff());

  while (true) {
    for (std::size_t v = 0; v < free_count; ++v) x[v] = value(idx[v]);
    double f0 = 0.0, f1 = 0.0;
    x.back() = 0.0;
    evaluate(vars, x, rates, slice_of, rows, aps, f0, air0);
    x.back() = 1.0;
    evaluate(vars, x, rates, slice_of, rows, aps, f1, air1);
    const double f_slope = f1 - f0;

    // Feasible index window for the last coordinate: value(k) decreases in k.
    double v_lo = 0.0, v_hi = 1.0;
    bool empty = false;
    for (std::size_t c = 0; c < rows.size(); ++c) {
      const double c0 = air0[c] - rows[c].beta;
      const double slope = air1[c] - air0[c];
      if (slope > 0.0) {
        v_lo = std::max(v_lo, (-eps - c0) / slope);
      } else if (slope < 0.0) {
        v_hi = std::min(v_hi, (-eps - c0) / slope);
      } else if (c0 < -eps) {
        empty = true;
      }
    }
    const auto feasible_at = [&](long k) {
      const double v = value(k);
      for (std::size_t c = 0; c < rows.size(); ++c) {
        if (air0[c] + (air1[c] - air0[c]) * v - rows[c].beta < -eps) return false;
      }
      return true;
    };
    if (!empty && v_lo <= v_hi) {
      long k_min = std::max(0L, static_cast<long>(std::floor((1.0 - v_hi) * cells)));
      long k_max = std::min(last_index, static_cast<long>(std::ceil((1.0 - v_lo) * cells)));
      while (k_min <= k_max && !feasible_at(k_min)) ++k_min;
      while (k_max >= k_min && !feasible_at(k_max)) --k_max;
      if (k_min <= k_max) {
        // Largest value first unless the objective falls with it.
        const long k = f_slope < -tie ? k_max : k_min;
        const double f = f0 + f_slope * value(k);
        if (f > best_objective + tie) {
          best_objective = f;
          best_x = x;
          best_x.back() = value(k);
        }
      }
    }

    // Scaling oracle: maximize the concave min of affine ratios over the grid.
    if (!rows.empty()) {
      const auto ratio_at = [&](double v) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < rows.size(); ++c) {
          m = std::min(m, (air0[c] + (air1[c] - air0[c]) * v + eps) / rows[c].beta);
        }
        return m;
      };
      std::vector<double> knots{0.0, 1.0};
      for (std::size_t c = 0; c < rows.size(); ++c) {
        for (std::size_t d = c + 1; d < rows.size(); ++d) {
          const double sc = (air1[c] - air0[c]) / rows[c].beta;
          const double sd = (air1[d] - air0[d]) / rows[d].beta;
          if (sc == sd) continue;
          const double v = ((air0[d] + eps) / rows[d].beta - (air0[c] + eps) / rows[c].beta) / (sc - sd);
          if (v > 0.0 && v < 1.0) knots.push_back(v);
        }
      }
      for (double v : knots) {
        for (double g : {std::floor(v * cells), std::ceil(v * cells)}) {
          best_ratio = std::max(best_ratio, ratio_at(std::clamp(g, 0.0, cells) / cells));
        }
      }
    }
    out.points += static_cast<std::uint64_t>(last_index + 1);

    std::size_t pos = free_count;
    while (pos > 0) {
      --pos;
      if (++idx[pos] <= last_index) break;
      idx[pos] = 0;
      if (pos == 0) {
        pos = free_count + 1;
        break;
      }
    }
    if (free_count == 0 || pos == free_count + 1) break;
  }

  if (best_x.empty()) {
    out.feasible = false;
    out.scaling_factor = std::clamp(best_ratio, 0.0, 1.0);
    return out;
  }
  out.feasible = true;
  out.objective = best_objective;
  for (std::size_t v = 0; v < vars.size(); ++v) out.tau(vars[v].user, vars[v].ap) = best_x[v];
  return out;
}

}  // namespace sdwn::wlan
