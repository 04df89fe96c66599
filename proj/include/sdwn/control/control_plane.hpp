#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "sdwn/cellular/solver.hpp"
#include "sdwn/core/channel.hpp"
#include "sdwn/wlan/cw.hpp"
#include "sdwn/wlan/optimizer.hpp"

namespace sdwn::control {

enum class RanKind { wlan, cellular };
enum class GuaranteeKind { airtime, min_rate };
enum class IsolationLevel { strict, best_effort };

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchedulingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Strict reservations that cannot be met. Carries the largest feasible scaling.
class InfeasibleSla : public SchedulingError {
 public:
  InfeasibleSla(std::size_t ran, double scaling);
  std::size_t ran_id;
  double scaling_factor;
};

/// Out-of-order or wrong-kind schedule handed to an LRM.
class RejectedSchedule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SlaSpec {
  std::size_t slice_id = 0;
  GuaranteeKind guarantee_kind = GuaranteeKind::airtime;
  double guarantee_value = 0.0;  // airtime fraction or bit/s/Hz
  IsolationLevel isolation_level = IsolationLevel::strict;

  void validate() const;
};

struct SliceConstraint {
  std::size_t slice_id = 0;
  double reservation = 0.0;
  bool scalable = false;  // best-effort: may be scaled down when infeasible
};

/// SD-VRM: one SLA to the constraint SD-CRM hands to the RAN solver.
SliceConstraint vrm_translate(const SlaSpec& sla, RanKind ran);

/// What a RAN's local manager knows: links, per-user slices, capacity.
struct RanState {
  std::size_t ran_id = 0;
  RanKind kind = RanKind::wlan;
  Topology topology;  // aps are BSs for cellular RANs
  ChannelParams channel;
  RateTable rate_table = RateTable::ieee80211a();
  std::size_t subcarriers = 4;
};

struct MeasurementReport {
  std::size_t ran_id = 0;
  RanKind kind = RanKind::wlan;
  std::vector<std::size_t> user_slice;  // slice id per user
  Eigen::MatrixXd snr;                  // WLAN: users x APs
  Eigen::MatrixXd rates;                // WLAN: users x APs, Mbit/s
  cellular::GainTensor gains;           // cellular
  std::vector<double> budgets;          // cellular: per-BS watts
  double noise_power = 0.0;
  std::vector<std::size_t> users_per_ap;  // users whose best link is that AP/BS
};

/// SD-LRM measurement. Deterministic in the state.
MeasurementReport lrm_report(const RanState& state);

enum class ScheduleStatus { optimal, scaled };

struct ResourceBlockSchedule {
  std::size_t ran_id = 0;
  std::uint64_t epoch = 0;
  std::variant<wlan::TauMatrix, cellular::CellularAllocation> allocation;
  ScheduleStatus status = ScheduleStatus::optimal;
  double scaling_factor = 1.0;
  std::vector<SliceSpec> slices;  // reservations actually enforced

  RanKind kind() const { return allocation.index() == 0 ? RanKind::wlan : RanKind::cellular; }
};

struct ScheduleRequest {
  std::size_t ran_id = 0;
  std::vector<SliceConstraint> constraints;  // slices without one get 0
  std::vector<wlan::TauMatrix> wlan_warm_starts;
  std::vector<cellular::CellularAllocation> cellular_warm_starts;
};

struct SolverSettings {
  wlan::WlanSolverOptions wlan;
  cellular::CellularSolverOptions cellular;
};

/// SD-CRM. Dispatches each request to its RAN's solver. Strict constraints that
/// cannot be met raise InfeasibleSla; best-effort ones are scaled down by the
/// solver's factor and re-solved. Epochs count per RAN from 1.
class SdCrm {
 public:
  explicit SdCrm(SolverSettings settings) : settings_(std::move(settings)) {}

  std::vector<ResourceBlockSchedule> schedule(const std::vector<ScheduleRequest>& requests,
                                              const std::vector<MeasurementReport>& reports);

 private:
  ResourceBlockSchedule schedule_one(const ScheduleRequest& request, const MeasurementReport& report) const;

  SolverSettings settings_;
  std::map<std::size_t, std::uint64_t> epochs_;
};

struct CellularTables {
  Eigen::MatrixXi owner;
  Eigen::MatrixXd power;
  bool operator==(const CellularTables& o) const { return owner == o.owner && power == o.power; }
};

struct PhysicalConfig {
  std::size_t ran_id = 0;
  std::uint64_t epoch = 0;
  std::variant<CellularTables, wlan::CwTable> parameters;

  bool operator==(const PhysicalConfig& o) const {
    return ran_id == o.ran_id && epoch == o.epoch && parameters == o.parameters;
  }
};

/// SD-LRM for one RAN: maps schedules onto physical knobs in epoch order.
class SdLrm {
 public:
  SdLrm(std::size_t ran_id, RanKind kind) : ran_id_(ran_id), kind_(kind) {}

  PhysicalConfig apply(const ResourceBlockSchedule& schedule);
  std::uint64_t last_epoch() const { return last_epoch_; }

 private:
  std::size_t ran_id_;
  RanKind kind_;
  std::uint64_t last_epoch_ = 0;
};

/// Slice specs for a report's users with the given reservation per slice id.
std::vector<SliceSpec> slices_for(const MeasurementReport& report, const std::vector<SliceConstraint>& constraints,
                                  double scale = 1.0);

}  // namespace sdwn::control
