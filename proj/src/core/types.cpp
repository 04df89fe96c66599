#include "sdwn/core/types.hpp"

#include <cmath>
#include <set>

namespace sdwn {

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

void Region::validate() const {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw ConfigError("region: width and height must be positive");
  }
}

void ChannelParams::validate() const {
  if (!(pathloss_exponent > 2.0)) throw ConfigError("channel: pathloss_exponent must exceed 2");
  if (!(reference_distance > 0.0)) throw ConfigError("channel: reference_distance must be positive");
  if (!(reference_gain > 0.0)) throw ConfigError("channel: reference_gain must be positive");
  if (!(noise_power > 0.0)) throw ConfigError("channel: noise_power must be positive");
}

void LoadSplit::validate() const {
  if (!(rho1 >= 0.0 && rho1 <= 1.0)) throw ConfigError("load split: rho1 must lie in [0, 1]");
}

void DeploymentParams::validate() const {
  if (!(lambda_mean > 0.0)) throw ConfigError("deployment: lambda_mean must be positive");
}

void Topology::validate() const {
  region.validate();
  for (std::size_t a = 0; a < aps.size(); ++a) {
    if (aps[a].id != a) throw ConfigError("topology: AP ids must be 0..n-1 in order");
    if (!region.contains(aps[a].position)) throw ConfigError("topology: AP outside region");
    if (!(aps[a].tx_power > 0.0)) throw ConfigError("topology: AP tx_power must be positive");
  }
  for (std::size_t i = 0; i < users.size(); ++i) {
    if (users[i].id != i) throw ConfigError("topology: user ids must be 0..n-1 in order");
    if (!region.contains(users[i].position)) throw ConfigError("topology: user outside region");
  }
}

namespace {

void check_membership(const std::vector<SliceSpec>& slices, std::size_t user_count) {
  std::set<std::size_t> seen;
  for (const auto& s : slices) {
    for (std::size_t u : s.user_ids) {
      if (u >= user_count) {
        throw ConfigError("slice " + std::to_string(s.slice_id) + " references unknown user " +
                          std::to_string(u));
      }
      if (!seen.insert(u).second) {
        throw ConfigError("user " + std::to_string(u) + " belongs to more than one slice");
      }
    }
  }
}

}  // namespace

void validate_wlan_slices(const std::vector<SliceSpec>& slices, std::size_t user_count) {
  // A total above one is accepted here; the optimizer reports it as infeasible.
  for (const auto& s : slices) {
    if (!(s.reservation >= 0.0 && s.reservation <= 1.0)) {
      throw ConfigError("slice " + std::to_string(s.slice_id) + ": airtime share must lie in [0, 1]");
    }
  }
  check_membership(slices, user_count);
}

void validate_cellular_slices(const std::vector<SliceSpec>& slices, std::size_t user_count) {
  for (const auto& s : slices) {
    if (!(s.reservation >= 0.0) || !std::isfinite(s.reservation)) {
      throw ConfigError("slice " + std::to_string(s.slice_id) + ": rate reservation must be >= 0");
    }
  }
  check_membership(slices, user_count);
}

std::vector<SliceSpec> slices_from_users(const std::vector<User>& users, std::size_t slice_count,
                                         const std::vector<double>& reservations) {
  std::vector<SliceSpec> out(slice_count);
  for (std::size_t k = 0; k < slice_count; ++k) {
    out[k].slice_id = k;
    out[k].reservation = k < reservations.size() ? reservations[k] : 0.0;
  }
  for (const auto& u : users) {
    if (u.slice_id >= slice_count) throw ConfigError("user slice id out of range");
    out[u.slice_id].user_ids.push_back(u.id);
  }
  return out;
}

}  // namespace sdwn
