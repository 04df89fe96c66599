#pragma once

#include <cstdint>

#include "sdwn/cellular/solver.hpp"
#include "sdwn/wlan/oracle.hpp"

namespace sdwn::cellular {

inline constexpr std::size_t kOracleMaxUsers = 4;
inline constexpr std::size_t kOracleMaxBss = 2;
inline constexpr std::size_t kOracleMaxSubcarriers = 4;
inline constexpr int kOracleMaxPowerLevels = 3;

struct CellularOracleResult {
  bool feasible = false;
  CellularAllocation allocation;
  double utility = 0.0;
  double total_rate = 0.0;
  /// 1 when feasible; otherwise the best min_k (T_k + tol) / R_k seen.
  double scaling_factor = 1.0;
  std::uint64_t points = 0;
};

/// Enumerates associations x per-subcarrier (owner, power level) choices under
/// each BS budget. Encoding order: association vector, then BS-major slots
/// where choice 0 is "unassigned" and owners come in id order with rising
/// levels. The smallest encoding wins ties.
CellularOracleResult brute_force_cellular_oracle(const CellularProblem& problem,
                                                 const CellularSolverOptions& options);

}  // namespace sdwn::cellular
