#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdwn/core/types.hpp"

namespace sdwn::cellular {

/// Channel power gains indexed (user, BS, subcarrier).
class GainTensor {
 public:
  GainTensor() = default;
  GainTensor(std::size_t users, std::size_t bss, std::size_t subcarriers, double fill = 0.0);

  std::size_t users() const { return users_; }
  std::size_t bss() const { return bss_; }
  std::size_t subcarriers() const { return subcarriers_; }

  double& operator()(std::size_t i, std::size_t b, std::size_t n) { return data_[index(i, b, n)]; }
  double operator()(std::size_t i, std::size_t b, std::size_t n) const { return data_[index(i, b, n)]; }

  /// Mean over subcarriers, users x BSs.
  Eigen::MatrixXd averaged() const;
  void validate() const;

 private:
  std::size_t index(std::size_t i, std::size_t b, std::size_t n) const {
    return (i * bss_ + b) * subcarriers_ + n;
  }
  std::size_t users_ = 0;
  std::size_t bss_ = 0;
  std::size_t subcarriers_ = 0;
  std::vector<double> data_;
};

/// Gains for every (user, BS, subcarrier) of a topology whose `aps` are BSs.
/// With fading off all subcarriers of a link share the path gain.
GainTensor gain_tensor(const Topology& topology, const ChannelParams& params, std::size_t subcarriers);

inline constexpr int kUnassigned = -1;

struct CellularAllocation {
  std::vector<int> association;  // user -> BS, kUnassigned allowed
  Eigen::MatrixXi owner;         // BS x subcarrier -> user or kUnassigned
  Eigen::MatrixXd power;         // BS x subcarrier, watts

  static CellularAllocation empty(std::size_t users, std::size_t bss, std::size_t subcarriers);
  std::size_t users() const { return association.size(); }
  std::size_t bss() const { return static_cast<std::size_t>(owner.rows()); }
  std::size_t subcarriers() const { return static_cast<std::size_t>(owner.cols()); }

  /// Throws ConfigError on any broken invariant. Budget sums are compared with
  /// a relative rounding allowance of 1e-12.
  void validate(const std::vector<double>& budgets) const;
};

struct CellularReport {
  Eigen::VectorXd per_user_rate;   // bit/s/Hz
  Eigen::VectorXd per_slice_rate;  // bit/s/Hz
  std::vector<bool> cell_edge_flags;

  double total() const { return per_user_rate.sum(); }
};

/// Per-user rates from SINR on each held subcarrier. Does not validate budgets;
/// callers that accept external allocations use `validate` first.
Eigen::VectorXd user_rates(const CellularAllocation& alloc, const GainTensor& gains, double noise_power);

CellularReport cellular_rates(const CellularAllocation& alloc, const GainTensor& gains,
                              const std::vector<double>& budgets, double noise_power,
                              const std::vector<SliceSpec>& slices);

/// Edge iff distance to the nearest BS >= gamma * (half the minimum inter-BS distance).
std::vector<bool> classify_cell_edge(const std::vector<User>& users, const std::vector<AccessPoint>& bss,
                                     double gamma);

/// The radius used by classify_cell_edge.
double cell_edge_radius(const std::vector<AccessPoint>& bss, double gamma);

}  // namespace sdwn::cellular
