#include "sdwn/core/channel.hpp"

#include <algorithm>
#include <cmath>

#include "sdwn/core/random.hpp"

namespace sdwn {

double path_gain(double distance, const ChannelParams& params) {
  const double d = std::max(distance, params.reference_distance);
  return params.reference_gain * std::pow(d / params.reference_distance, -params.pathloss_exponent);
}

double rayleigh_power_draw(std::uint64_t seed, std::size_t user, std::size_t ap,
                           std::size_t subcarrier) {
  std::uint64_t h = derive_seed(seed, user);
  h = derive_seed(h, ap);
  h = derive_seed(h, subcarrier);
  // Inverse CDF of Exp(1); 1 - u lies in (0, 1].
  return -std::log(1.0 - unit_from_hash(h));
}

double channel_gain(const User& user, const AccessPoint& ap, const ChannelParams& params,
                    std::size_t subcarrier) {
  double g = path_gain(distance(user.position, ap.position), params);
  if (params.fading == FadingKind::rayleigh) {
    g *= rayleigh_power_draw(params.fading_seed, user.id, ap.id, subcarrier);
  }
  return g;
}

Eigen::MatrixXd gain_matrix(const Topology& topology, const ChannelParams& params) {
  Eigen::MatrixXd g(topology.user_count(), topology.ap_count());
  for (std::size_t i = 0; i < topology.user_count(); ++i) {
    for (std::size_t a = 0; a < topology.ap_count(); ++a) {
      g(i, a) = channel_gain(topology.users[i], topology.aps[a], params);
    }
  }
  return g;
}

RateTable RateTable::ieee80211a() {
  return {{4.0, 5.0, 7.0, 9.0, 12.0, 16.0, 20.0, 21.0},
          {6.0, 9.0, 12.0, 18.0, 24.0, 36.0, 48.0, 54.0}};
}

void RateTable::validate() const {
  if (thresholds_db.empty() || thresholds_db.size() != rates_mbps.size()) {
    throw ConfigError("rate table: thresholds and rates must be non-empty and equally long");
  }
  for (std::size_t k = 1; k < thresholds_db.size(); ++k) {
    if (!(thresholds_db[k] > thresholds_db[k - 1]) || !(rates_mbps[k] >= rates_mbps[k - 1])) {
      throw ConfigError("rate table: thresholds must increase and rates must not decrease");
    }
  }
  if (!(rates_mbps.front() > 0.0)) throw ConfigError("rate table: rates must be positive");
}

double wlan_phy_rate(double snr, const RateTable& table) {
  if (!(snr > 0.0)) return 0.0;
  double rate = 0.0;
  // Compare in the linear domain so an SNR given as 10^(dB/10) hits its threshold exactly.
  for (std::size_t k = 0; k < table.thresholds_db.size(); ++k) {
    if (snr >= std::pow(10.0, table.thresholds_db[k] / 10.0)) rate = table.rates_mbps[k];
  }
  return rate;
}

Eigen::MatrixXd wlan_rate_matrix(const Topology& topology, const ChannelParams& params,
                                 const RateTable& table) {
  const Eigen::MatrixXd g = gain_matrix(topology, params);
  Eigen::MatrixXd r(g.rows(), g.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index a = 0; a < g.cols(); ++a) {
      const double snr = topology.aps[static_cast<std::size_t>(a)].tx_power * g(i, a) /
                         params.noise_power;
      r(i, a) = wlan_phy_rate(snr, table);
    }
  }
  return r;
}

}  // namespace sdwn
