#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdwn/cellular/solver.hpp"
#include "sdwn/control/control_plane.hpp"
#include "sdwn/core/channel.hpp"
#include "sdwn/core/types.hpp"
#include "sdwn/wlan/optimizer.hpp"

namespace sdwn::harness {

enum class Policy { sdwn, max_snr };

const char* to_string(Policy p);

struct SliceConfig {
  std::size_t slice_id = 0;
  control::GuaranteeKind guarantee_kind = control::GuaranteeKind::airtime;
  double guarantee_value = 0.0;
  /// Airtime only: value is a fraction of the largest total airtime the trial's
  /// topology can reach, so "0.5" splits whatever capacity exists evenly.
  bool relative = false;
  control::IsolationLevel isolation_level = control::IsolationLevel::strict;

  bool operator==(const SliceConfig&) const = default;
};

struct DeploymentConfig {
  double lambda_mean = 1.0;
  double edge_fraction = 0.0;  // cellular: share of users placed in the edge annulus
  double edge_gamma = 0.8;     // edge radius as a fraction of half the min inter-BS distance

  bool operator==(const DeploymentConfig&) const = default;
};

/// Fixed users instead of a PPP draw; used for oracle instances.
struct UserConfig {
  Point position;
  std::size_t slice_id = 0;

  bool operator==(const UserConfig&) const = default;
};

inline constexpr std::size_t kSliceCount = 2;

struct ScenarioConfig {
  std::string scenario_id;
  control::RanKind scenario_kind = control::RanKind::wlan;
  Region region;
  std::vector<AccessPoint> layout;
  ChannelParams channel;
  RateTable rate_table = RateTable::ieee80211a();
  std::size_t subcarriers = 4;
  DeploymentConfig deployment;
  LoadSplit load_split;
  std::vector<SliceConfig> slices;
  Policy policy = Policy::sdwn;
  wlan::WlanSolverOptions wlan_solver;
  cellular::CellularSolverOptions cellular_solver;
  std::size_t trials = 50;
  std::uint64_t master_seed = 1;
  std::optional<std::vector<UserConfig>> users;

  /// Throws ConfigError listing every violated field.
  void validate() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses a JSON config. Unknown keys, wrong types and invariant violations are
/// all reported together in one ConfigError.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

}  // namespace sdwn::harness
