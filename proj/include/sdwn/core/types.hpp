#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdwn {

/// Raised when inputs violate a documented invariant or dimensions disagree.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

double distance(const Point& a, const Point& b);

/// Rectangular deployment area anchored at the origin.
struct Region {
  double width = 0.0;
  double height = 0.0;

  bool contains(const Point& p) const {
    return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
  }
  void validate() const;

  bool operator==(const Region&) const = default;
};

/// An AP (WLAN) or BS (cellular). Both scenarios share this record.
struct AccessPoint {
  std::size_t id = 0;
  Point position;
  std::size_t channel_id = 0;
  double tx_power = 0.0;  // watts

  bool operator==(const AccessPoint&) const = default;
};

struct User {
  std::size_t id = 0;
  Point position;
  std::size_t slice_id = 0;

  bool operator==(const User&) const = default;
};

/// Per-SP reservation. For WLAN `reservation` is an airtime fraction, for
/// cellular it is a minimum aggregate rate in bit/s/Hz.
struct SliceSpec {
  std::size_t slice_id = 0;
  double reservation = 0.0;
  std::vector<std::size_t> user_ids;
};

enum class FadingKind { off, rayleigh };

struct ChannelParams {
  double pathloss_exponent = 3.5;
  double reference_distance = 1.0;  // meters
  double reference_gain = 1.0;
  double noise_power = 1e-13;  // watts
  FadingKind fading = FadingKind::off;
  std::uint64_t fading_seed = 0;

  void validate() const;

  bool operator==(const ChannelParams&) const = default;
};

struct LoadSplit {
  double rho1 = 0.5;
  void validate() const;

  bool operator==(const LoadSplit&) const = default;
};

struct DeploymentParams {
  double lambda_mean = 1.0;  // expected users per AP
  void validate() const;

  bool operator==(const DeploymentParams&) const = default;
};

struct Topology {
  Region region;
  std::vector<AccessPoint> aps;
  std::vector<User> users;

  std::size_t ap_count() const { return aps.size(); }
  std::size_t user_count() const { return users.size(); }
  void validate() const;
};

/// Validates WLAN reservations: sum of airtime shares at most one, user sets
/// disjoint and referencing existing users.
void validate_wlan_slices(const std::vector<SliceSpec>& slices, std::size_t user_count);

/// Validates cellular reservations: non-negative rates, disjoint user sets.
void validate_cellular_slices(const std::vector<SliceSpec>& slices, std::size_t user_count);

/// Builds slice specs from users' slice ids, one spec per id in [0, slice_count).
std::vector<SliceSpec> slices_from_users(const std::vector<User>& users, std::size_t slice_count,
                                         const std::vector<double>& reservations);

}  // namespace sdwn
