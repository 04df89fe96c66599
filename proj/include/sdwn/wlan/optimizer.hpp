#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sdwn/core/types.hpp"
#include "sdwn/wlan/throughput.hpp"

namespace sdwn::wlan {

struct WlanSolverOptions {
  int max_iterations = 20000;
  double step_size = 1.0;
  double feasibility_tolerance = 1e-4;  // epsilon on airtime guarantees
  double convergence_tolerance = 1e-7;
  int multistart_count = 8;
  double oracle_grid_step = 1e-3;
  AirtimeScope scope = AirtimeScope::network_average;
  double scaling_tolerance = 5e-4;  // bisection width for the infeasibility factor

  void validate() const;

  bool operator==(const WlanSolverOptions&) const = default;
};

/// The optimization instance: PHY rates (users x APs) and SP reservations.
/// A pair with rate 0 is out of coverage; its tau is pinned at 0.
struct WlanProblem {
  Eigen::MatrixXd rates;
  std::vector<SliceSpec> slices;
  /// Extra starting points, e.g. the Max-SNR allocation. Each is also a candidate.
  std::vector<TauMatrix> warm_starts;

  void validate() const;
};

struct FeasibilityResult {
  bool feasible = false;
  /// 1 when feasible; otherwise the largest s (within the bisection width)
  /// for which reservations s * beta are feasible.
  double scaling_factor = 1.0;
  /// Best minimum slack found at the unscaled reservations.
  double min_slack = 0.0;
  /// A point meeting the (scaled, when infeasible) reservations within epsilon.
  TauMatrix witness;
};

enum class WlanStatus { optimal, infeasible };

struct WlanSolution {
  WlanStatus status = WlanStatus::optimal;
  TauMatrix tau;           // empty when infeasible
  double objective = 0.0;  // sum of T(i,a), Mbit/s
  double scaling_factor = 1.0;
  int starts_run = 0;
};

/// Largest minimum slack min_k (airtime_k - beta_k) over feasible tau, from
/// the same multistart machinery as the optimizer. Returns the slack and its argmax.
std::pair<double, TauMatrix> max_min_slack(const WlanProblem& problem,
                                           const WlanSolverOptions& options);

/// Decides whether the reservations can be met within epsilon, and if not,
/// bisects on a uniform scaling of the reservations.
FeasibilityResult feasibility_check(const WlanProblem& problem, const WlanSolverOptions& options);

/// Maximizes total throughput subject to per-SP airtime guarantees. Never returns
/// an infeasible point: infeasible reservations produce status infeasible with
/// the scaling factor.
WlanSolution optimize_tau(const WlanProblem& problem, const WlanSolverOptions& options);

/// Copy of `slices` with every reservation multiplied by `factor`.
std::vector<SliceSpec> scale_reservations(std::vector<SliceSpec> slices, double factor);

/// Largest network-average total airtime any tau can reach: the fraction of APs
/// that cover at least one user.
double max_total_airtime(const Eigen::MatrixXd& rates);

}  // namespace sdwn::wlan
