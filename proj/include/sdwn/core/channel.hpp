#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "sdwn/core/types.hpp"

namespace sdwn {

/// Deterministic path gain K * (d / d0)^-alpha with d clamped at d0.
double path_gain(double distance, const ChannelParams& params);

/// Unit-mean exponential fading draw for one (user, ap, subcarrier) link.
/// Stateless: the value depends only on the fading seed and the link indices.
double rayleigh_power_draw(std::uint64_t seed, std::size_t user, std::size_t ap,
                           std::size_t subcarrier);

/// Path gain times fading (when enabled) for the given subcarrier.
double channel_gain(const User& user, const AccessPoint& ap, const ChannelParams& params,
                    std::size_t subcarrier = 0);

/// users x aps matrix of channel_gain on subcarrier 0.
Eigen::MatrixXd gain_matrix(const Topology& topology, const ChannelParams& params);

/// Discrete PHY rate table: rate[k] applies for snr_db >= threshold_db[k].
struct RateTable {
  std::vector<double> thresholds_db;
  std::vector<double> rates_mbps;

  /// 802.11a rates for a 20 MHz channel.
  static RateTable ieee80211a();
  void validate() const;

  bool operator==(const RateTable&) const = default;
};

/// Maps a linear SNR to a rate in Mbit/s; below the lowest threshold the user
/// is out of coverage (rate 0). Thresholds are closed lower bounds.
double wlan_phy_rate(double snr, const RateTable& table);

/// users x aps matrix of PHY rates from tx power, gain and noise.
Eigen::MatrixXd wlan_rate_matrix(const Topology& topology, const ChannelParams& params,
                                 const RateTable& table);

}  // namespace sdwn
