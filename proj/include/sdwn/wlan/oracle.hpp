#pragma once

#include <stdexcept>

#include "sdwn/wlan/optimizer.hpp"

namespace sdwn {

/// An oracle was handed an instance beyond its enumeration limits.
class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sdwn

namespace sdwn::wlan {

inline constexpr std::size_t kOracleMaxVariables = 4;

struct TauOracleResult {
  bool feasible = false;
  TauMatrix tau;
  double objective = 0.0;
  /// 1 when feasible; otherwise max over the grid of min_k (airtime_k + eps) / beta_k.
  double scaling_factor = 1.0;
  std::uint64_t points = 0;
};

/// Exhaustive search over {0, step, ..., 1} for every covered (user, AP) pair.
/// Every quantity is affine in any single tau, so the last coordinate is
/// resolved per grid cell in closed form; the result equals full enumeration.
/// Ties go to the smallest encoding, where grid index k stands for 1 - k*step
/// (so lower user ids win monopoly ties).
TauOracleResult brute_force_tau_oracle(const WlanProblem& problem, double grid_step,
                                       double feasibility_tolerance,
                                       AirtimeScope scope = AirtimeScope::network_average);

}  // namespace sdwn::wlan
