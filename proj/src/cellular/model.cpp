#include "sdwn/cellular/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sdwn/core/channel.hpp"

namespace sdwn::cellular {

GainTensor::GainTensor(std::size_t users, std::size_t bss, std::size_t subcarriers, double fill)
    : users_(users), bss_(bss), subcarriers_(subcarriers), data_(users * bss * subcarriers, fill) {}

Eigen::MatrixXd GainTensor::averaged() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(users_), static_cast<Eigen::Index>(bss_));
  if (subcarriers_ == 0) return m;
  for (std::size_t i = 0; i < users_; ++i) {
    for (std::size_t b = 0; b < bss_; ++b) {
      double s = 0.0;
      for (std::size_t n = 0; n < subcarriers_; ++n) s += (*this)(i, b, n);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) = s / static_cast<double>(subcarriers_);
    }
  }
  return m;
}

void GainTensor::validate() const {
  for (double g : data_) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw ConfigError("gain tensor: entries must be finite and >= 0");
  }
}

GainTensor gain_tensor(const Topology& topology, const ChannelParams& params, std::size_t subcarriers) {
  GainTensor g(topology.user_count(), topology.ap_count(), subcarriers);
  for (std::size_t i = 0; i < topology.user_count(); ++i) {
    for (std::size_t b = 0; b < topology.ap_count(); ++b) {
      for (std::size_t n = 0; n < subcarriers; ++n) {
        g(i, b, n) = channel_gain(topology.users[i], topology.aps[b], params, n);
      }
    }
  }
  return g;
}

CellularAllocation CellularAllocation::empty(std::size_t users, std::size_t bss, std::size_t subcarriers) {
  CellularAllocation a;
  a.association.assign(users, kUnassigned);
  a.owner = Eigen::MatrixXi::Constant(static_cast<Eigen::Index>(bss), static_cast<Eigen::Index>(subcarriers),
                                      kUnassigned);
  a.power = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bss), static_cast<Eigen::Index>(subcarriers));
  return a;
}

void CellularAllocation::validate(const std::vector<double>& budgets) const {
  const auto b_count = owner.rows();
  if (power.rows() != b_count || power.cols() != owner.cols()) {
    throw ConfigError("allocation: owner and power tables differ in shape");
  }
  if (budgets.size() != static_cast<std::size_t>(b_count)) {
    throw ConfigError("allocation: one power budget per BS required");
  }
  for (std::size_t i = 0; i < association.size(); ++i) {
    if (association[i] < kUnassigned || association[i] >= b_count) {
      throw ConfigError("allocation: user " + std::to_string(i) + " associated with unknown BS");
    }
  }
  for (Eigen::Index b = 0; b < b_count; ++b) {
    double used = 0.0;
    for (Eigen::Index n = 0; n < owner.cols(); ++n) {
      const int u = owner(b, n);
      const double p = power(b, n);
      if (!(p >= 0.0) || !std::isfinite(p)) throw ConfigError("allocation: power must be finite and >= 0");
      if (u == kUnassigned) {
        if (p != 0.0) throw ConfigError("allocation: unassigned subcarrier carries power");
        continue;
      }
      if (u < 0 || static_cast<std::size_t>(u) >= association.size()) {
        throw ConfigError("allocation: subcarrier owned by unknown user");
      }
      if (association[static_cast<std::size_t>(u)] != b) {
        throw ConfigError("allocation: user " + std::to_string(u) + " holds a subcarrier of a BS it is not associated with");
      }
      used += p;
    }
    const double budget = budgets[static_cast<std::size_t>(b)];
    if (used > budget * (1.0 + 1e-12)) {
      throw ConfigError("allocation: BS " + std::to_string(b) + " exceeds its power budget");
    }
  }
}

Eigen::VectorXd user_rates(const CellularAllocation& alloc, const GainTensor& gains, double noise_power) {
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(alloc.users()));
  const std::size_t bss = alloc.bss();
  for (std::size_t b = 0; b < bss; ++b) {
    for (std::size_t n = 0; n < alloc.subcarriers(); ++n) {
      const int u = alloc.owner(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(n));
      const double p = alloc.power(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(n));
      if (u == kUnassigned || p <= 0.0) continue;
      const auto ui = static_cast<std::size_t>(u);
      double interference = noise_power;
      for (std::size_t o = 0; o < bss; ++o) {
        if (o != b) interference += alloc.power(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(n)) * gains(ui, o, n);
      }
      r(u) += std::log2(1.0 + p * gains(ui, b, n) / interference);
    }
  }
  return r;
}

CellularReport cellular_rates(const CellularAllocation& alloc, const GainTensor& gains,
                              const std::vector<double>& budgets, double noise_power,
                              const std::vector<SliceSpec>& slices) {
  alloc.validate(budgets);
  if (gains.users() != alloc.users() || gains.bss() != alloc.bss() || gains.subcarriers() != alloc.subcarriers()) {
    throw ConfigError("cellular rates: gain tensor and allocation dimensions differ");
  }
  validate_cellular_slices(slices, alloc.users());
  CellularReport rep;
  rep.per_user_rate = user_rates(alloc, gains, noise_power);
  rep.per_slice_rate = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(slices.size()));
  for (std::size_t k = 0; k < slices.size(); ++k) {
    for (std::size_t u : slices[k].user_ids) rep.per_slice_rate(static_cast<Eigen::Index>(k)) += rep.per_user_rate(static_cast<Eigen::Index>(u));
  }
  rep.cell_edge_flags.assign(alloc.users(), false);
  return rep;
}

double cell_edge_radius(const std::vector<AccessPoint>& bss, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("cell edge: gamma must lie in (0, 1)");
  if (bss.size() < 2) throw ConfigError("cell edge: needs at least two BSs for an inter-site distance");
  double min_isd = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < bss.size(); ++a) {
    for (std::size_t b = a + 1; b < bss.size(); ++b) min_isd = std::min(min_isd, distance(bss[a].position, bss[b].position));
  }
  if (!(min_isd > 0.0)) throw ConfigError("cell edge: BSs must not be collocated");
  return gamma * 0.5 * min_isd;
}

std::vector<bool> classify_cell_edge(const std::vector<User>& users, const std::vector<AccessPoint>& bss,
                                     double gamma) {
  const double radius = cell_edge_radius(bss, gamma);
  std::vector<bool> edge(users.size(), false);
  for (std::size_t i = 0; i < users.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& b : bss) nearest = std::min(nearest, distance(users[i].position, b.position));
    edge[i] = nearest >= radius;
  }
  return edge;
}

}  // namespace sdwn::cellular
