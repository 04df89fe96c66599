#include "sdwn/control/control_plane.hpp"

#include <algorithm>
#include <string>

namespace sdwn::control {

InfeasibleSla::InfeasibleSla(std::size_t ran, double scaling)
    : SchedulingError("RAN " + std::to_string(ran) + ": strict reservations infeasible (largest feasible scaling " +
                      std::to_string(scaling) + ")"),
      ran_id(ran),
      scaling_factor(scaling) {}

void SlaSpec::validate() const {
  if (!(guarantee_value >= 0.0)) throw ConfigError("SLA for slice " + std::to_string(slice_id) + ": value must be >= 0");
  if (guarantee_kind == GuaranteeKind::airtime && guarantee_value > 1.0) {
    throw ConfigError("SLA for slice " + std::to_string(slice_id) + ": airtime share must be <= 1");
  }
}

SliceConstraint vrm_translate(const SlaSpec& sla, RanKind ran) {
  sla.validate();
  const bool matches = (sla.guarantee_kind == GuaranteeKind::airtime && ran == RanKind::wlan) ||
                       (sla.guarantee_kind == GuaranteeKind::min_rate && ran == RanKind::cellular);
  if (!matches) {
    throw TranslationError("SLA for slice " + std::to_string(sla.slice_id) + ": " +
                           (sla.guarantee_kind == GuaranteeKind::airtime ? "airtime" : "min_rate") +
                           " guarantee cannot be enforced on a " + (ran == RanKind::wlan ? "WLAN" : "cellular") +
                           " RAN");
  }
  return {sla.slice_id, sla.guarantee_value, sla.isolation_level == IsolationLevel::best_effort};
}

MeasurementReport lrm_report(const RanState& state) {
  MeasurementReport r;
  r.ran_id = state.ran_id;
  r.kind = state.kind;
  r.noise_power = state.channel.noise_power;
  const auto& topo = state.topology;
  for (const auto& u : topo.users) r.user_slice.push_back(u.slice_id);
  r.users_per_ap.assign(topo.ap_count(), 0);

  Eigen::MatrixXd strength;  // received power used to find each user's best node
  if (state.kind == RanKind::wlan) {
    const Eigen::MatrixXd g = gain_matrix(topo, state.channel);
    r.snr = g;
    for (std::size_t a = 0; a < topo.ap_count(); ++a) {
      r.snr.col(static_cast<Eigen::Index>(a)) *= topo.aps[a].tx_power / state.channel.noise_power;
    }
    r.rates = wlan_rate_matrix(topo, state.channel, state.rate_table);
    strength = r.snr;
  } else {
    r.gains = cellular::gain_tensor(topo, state.channel, state.subcarriers);
    for (const auto& b : topo.aps) r.budgets.push_back(b.tx_power);
    strength = r.gains.averaged();
    for (std::size_t b = 0; b < topo.ap_count(); ++b) strength.col(static_cast<Eigen::Index>(b)) *= r.budgets[b];
  }
  for (Eigen::Index i = 0; i < strength.rows(); ++i) {
    if (strength.cols() == 0) break;
    Eigen::Index best = 0;
    for (Eigen::Index a = 1; a < strength.cols(); ++a) {
      if (strength(i, a) > strength(i, best)) best = a;
    }
    ++r.users_per_ap[static_cast<std::size_t>(best)];
  }
  return r;
}

std::vector<SliceSpec> slices_for(const MeasurementReport& report, const std::vector<SliceConstraint>& constraints,
                                  double scale) {
  std::size_t count = 0;
  for (std::size_t s : report.user_slice) count = std::max(count, s + 1);
  for (const auto& c : constraints) count = std::max(count, c.slice_id + 1);
  std::vector<SliceSpec> slices(count);
  for (std::size_t k = 0; k < count; ++k) slices[k].slice_id = k;
  for (std::size_t u = 0; u < report.user_slice.size(); ++u) slices[report.user_slice[u]].user_ids.push_back(u);
  for (const auto& c : constraints) slices[c.slice_id].reservation = scale * c.reservation;
  return slices;
}

namespace {

bool all_scalable(const std::vector<SliceConstraint>& constraints) {
  return std::all_of(constraints.begin(), constraints.end(),
                     [](const SliceConstraint& c) { return c.scalable || !(c.reservation > 0.0); });
}

// Re-solving at the reported factor can still miss by a hair; shave a little each retry.
constexpr int kScaleRetries = 5;
constexpr double kScaleBackoff = 0.999;

}  // namespace

ResourceBlockSchedule SdCrm::schedule_one(const ScheduleRequest& req, const MeasurementReport& rep) const {
  ResourceBlockSchedule out;
  out.ran_id = req.ran_id;
  double scale = 1.0;
  for (int attempt = 0; attempt <= kScaleRetries; ++attempt) {
    out.slices = slices_for(rep, req.constraints, scale);
    double factor = 1.0;
    bool solved = false;
    if (rep.kind == RanKind::wlan) {
      const auto sol = wlan::optimize_tau({rep.rates, out.slices, req.wlan_warm_starts}, settings_.wlan);
      solved = sol.status == wlan::WlanStatus::optimal;
      factor = sol.scaling_factor;
      if (solved) out.allocation = sol.tau;
    } else {
      cellular::CellularProblem p;
      p.gains = rep.gains;
      p.budgets = rep.budgets;
      p.noise_power = rep.noise_power;
      p.slices = out.slices;
      p.warm_starts = req.cellular_warm_starts;
      const auto sol = cellular::solve_joint_allocation(p, settings_.cellular);
      solved = sol.status == cellular::CellularStatus::optimal;
      factor = sol.scaling_factor;
      if (solved) out.allocation = sol.allocation;
    }
    if (solved) {
      out.status = scale < 1.0 ? ScheduleStatus::scaled : ScheduleStatus::optimal;
      out.scaling_factor = scale;
      return out;
    }
    if (!all_scalable(req.constraints)) throw InfeasibleSla(req.ran_id, factor * scale);
    scale = attempt == 0 ? factor : scale * kScaleBackoff;
  }
  throw SchedulingError("RAN " + std::to_string(req.ran_id) + ": scaled reservations still infeasible");
}

std::vector<ResourceBlockSchedule> SdCrm::schedule(const std::vector<ScheduleRequest>& requests,
                                                   const std::vector<MeasurementReport>& reports) {
  std::vector<ResourceBlockSchedule> out;
  for (const auto& req : requests) {
    const auto it = std::find_if(reports.begin(), reports.end(),
                                 [&](const MeasurementReport& r) { return r.ran_id == req.ran_id; });
    if (it == reports.end()) {
      throw SchedulingError("no measurement report for RAN " + std::to_string(req.ran_id));
    }
    ResourceBlockSchedule s = schedule_one(req, *it);
    s.epoch = ++epochs_[req.ran_id];
    out.push_back(std::move(s));
  }
  return out;
}

PhysicalConfig SdLrm::apply(const ResourceBlockSchedule& schedule) {
  if (schedule.ran_id != ran_id_) {
    throw RejectedSchedule("LRM " + std::to_string(ran_id_) + ": schedule addressed to RAN " +
                           std::to_string(schedule.ran_id));
  }
  if (schedule.kind() != kind_) {
    throw RejectedSchedule("LRM " + std::to_string(ran_id_) + ": allocation kind does not match the RAN");
  }
  if (schedule.epoch <= last_epoch_) {
    throw RejectedSchedule("LRM " + std::to_string(ran_id_) + ": stale epoch " + std::to_string(schedule.epoch) +
                           " (last applied " + std::to_string(last_epoch_) + ")");
  }
  PhysicalConfig cfg;
  cfg.ran_id = ran_id_;
  cfg.epoch = schedule.epoch;
  if (const auto* tau = std::get_if<wlan::TauMatrix>(&schedule.allocation)) {
    cfg.parameters = wlan::tau_to_cwmin(*tau);
  } else {
    const auto& a = std::get<cellular::CellularAllocation>(schedule.allocation);
    cfg.parameters = CellularTables{a.owner, a.power};
  }
  last_epoch_ = schedule.epoch;
  return cfg;
}

}  // namespace sdwn::control
