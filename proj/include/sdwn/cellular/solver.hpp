#pragma once

#include <vector>

#include "sdwn/cellular/model.hpp"

namespace sdwn::cellular {

/// sum_rate maximizes total bit/s/Hz; proportional_fair maximizes
/// sum_i log(pf_floor + r_i), which stops the solver from parking edge users.
enum class CellularObjective { sum_rate, proportional_fair };

struct CellularSolverOptions {
  int power_levels = 3;  // oracle discretization {0, P/(L-1), ..., P}
  int max_outer_iterations = 20;
  double convergence_tolerance = 1e-6;
  double reservation_tolerance = 1e-3;  // bit/s/Hz
  CellularObjective objective = CellularObjective::sum_rate;
  double pf_floor = 2.0;  // bit/s/Hz; larger values lean towards sum rate
  double scaling_tolerance = 5e-4;

  void validate() const;

  bool operator==(const CellularSolverOptions&) const = default;
};

struct CellularProblem {
  GainTensor gains;
  std::vector<double> budgets;  // watts per BS
  double noise_power = 1e-13;
  std::vector<SliceSpec> slices;  // reservation = minimum slice rate
  std::vector<CellularAllocation> warm_starts;

  void validate() const;
};

double cellular_utility(const Eigen::VectorXd& rates, CellularObjective objective, double pf_floor = 2.0);

/// True when every slice rate reaches scale * R_k - tolerance.
bool meets_reservations(const Eigen::VectorXd& rates, const std::vector<SliceSpec>& slices, double scale,
                        double tolerance);

enum class CellularStatus { optimal, infeasible };

struct CellularSolution {
  CellularStatus status = CellularStatus::optimal;
  CellularAllocation allocation;  // meaningful only when optimal
  Eigen::VectorXd rates;
  double total_rate = 0.0;
  double utility = 0.0;
  double scaling_factor = 1.0;
};

/// Alternating optimization: greedy subcarrier ownership judged on the network
/// objective, per-BS water-filling against frozen interference, then user
/// reassociation one user at a time in id order. Deterministic.
CellularSolution solve_joint_allocation(const CellularProblem& problem, const CellularSolverOptions& options);

}  // namespace sdwn::cellular
