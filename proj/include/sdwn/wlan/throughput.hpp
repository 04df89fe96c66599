#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sdwn/core/types.hpp"

namespace sdwn::wlan {

/// Attempt probabilities tau(i, a) of user i at AP a in a generic slot.
struct TauMatrix {
  Eigen::MatrixXd tau;

  TauMatrix() = default;
  explicit TauMatrix(Eigen::MatrixXd values) : tau(std::move(values)) {}
  static TauMatrix zeros(std::size_t users, std::size_t aps) {
    return TauMatrix(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(users),
                                           static_cast<Eigen::Index>(aps)));
  }

  std::size_t users() const { return static_cast<std::size_t>(tau.rows()); }
  std::size_t aps() const { return static_cast<std::size_t>(tau.cols()); }
  double operator()(std::size_t i, std::size_t a) const {
    return tau(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
  }
  double& operator()(std::size_t i, std::size_t a) {
    return tau(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
  }
  /// Throws ConfigError unless every entry lies in [0, 1].
  void validate() const;
};

/// How an SP's airtime guarantee is measured.
enum class AirtimeScope {
  network_average,  // mean over APs of the SP's per-AP successful airtime
  per_ap,           // the guarantee must hold at every AP separately
};

struct WlanThroughputReport {
  Eigen::MatrixXd per_user_per_ap;     // Mbit/s
  Eigen::VectorXd per_sp;              // Mbit/s, indexed like the slice list
  Eigen::VectorXd per_sp_airtime;      // network-average successful airtime
  Eigen::MatrixXd per_sp_per_ap_airtime;  // slices x aps
  Eigen::VectorXd per_ap_airtime;      // total successful airtime at each AP

  double total() const { return per_user_per_ap.sum(); }
};

/// Slotted-attempt success model: T(i,a) = r(i,a) tau(i,a) prod_{j != i} (1 - tau(j,a)).
/// Each AP sits on its own channel, so APs do not interact.
WlanThroughputReport wlan_throughput(const TauMatrix& tau, const Eigen::MatrixXd& rates,
                                     const std::vector<SliceSpec>& slices);

/// Airtime that `slice` achieves under `scope` (minimum over APs for per_ap).
double slice_airtime(const WlanThroughputReport& report, std::size_t slice, AirtimeScope scope);

}  // namespace sdwn::wlan
