#include "sdwn/wlan/throughput.hpp"

#include <string>

namespace sdwn::wlan {

void TauMatrix::validate() const {
  for (Eigen::Index i = 0; i < tau.rows(); ++i) {
    for (Eigen::Index a = 0; a < tau.cols(); ++a) {
      const double v = tau(i, a);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw ConfigError("tau(" + std::to_string(i) + "," + std::to_string(a) +
                          ") outside [0, 1]");
      }
    }
  }
}

WlanThroughputReport wlan_throughput(const TauMatrix& tau, const Eigen::MatrixXd& rates,
                                     const std::vector<SliceSpec>& slices) {
  if (tau.tau.rows() != rates.rows() || tau.tau.cols() != rates.cols()) {
    throw ConfigError("wlan_throughput: tau is " + std::to_string(tau.tau.rows()) + "x" +
                      std::to_string(tau.tau.cols()) + " but rates are " +
                      std::to_string(rates.rows()) + "x" + std::to_string(rates.cols()));
  }
  tau.validate();
  if ((rates.array() < 0.0).any()) throw ConfigError("wlan_throughput: negative rate");
  validate_wlan_slices(slices, tau.users());

  const Eigen::Index n = tau.tau.rows();
  const Eigen::Index aps = tau.tau.cols();
  WlanThroughputReport out;
  out.per_user_per_ap = Eigen::MatrixXd::Zero(n, aps);
  out.per_ap_airtime = Eigen::VectorXd::Zero(aps);
  Eigen::MatrixXd success = Eigen::MatrixXd::Zero(n, aps);

  for (Eigen::Index a = 0; a < aps; ++a) {
    for (Eigen::Index i = 0; i < n; ++i) {
      double p = tau.tau(i, a);
      if (p == 0.0) continue;
      for (Eigen::Index j = 0; j < n && p != 0.0; ++j) {
        if (j != i) p *= 1.0 - tau.tau(j, a);
      }
      success(i, a) = p;
      out.per_user_per_ap(i, a) = rates(i, a) * p;
      out.per_ap_airtime(a) += p;
    }
  }

  const auto k_count = static_cast<Eigen::Index>(slices.size());
  out.per_sp = Eigen::VectorXd::Zero(k_count);
  out.per_sp_airtime = Eigen::VectorXd::Zero(k_count);
  out.per_sp_per_ap_airtime = Eigen::MatrixXd::Zero(k_count, aps);
  for (Eigen::Index k = 0; k < k_count; ++k) {
    for (std::size_t u : slices[static_cast<std::size_t>(k)].user_ids) {
      const auto i = static_cast<Eigen::Index>(u);
      out.per_sp(k) += out.per_user_per_ap.row(i).sum();
      out.per_sp_per_ap_airtime.row(k) += success.row(i);
    }
    out.per_sp_airtime(k) = aps > 0 ? out.per_sp_per_ap_airtime.row(k).mean() : 0.0;
  }
  return out;
}

double slice_airtime(const WlanThroughputReport& report, std::size_t slice, AirtimeScope scope) {
  const auto k = static_cast<Eigen::Index>(slice);
  if (scope == AirtimeScope::network_average) return report.per_sp_airtime(k);
  if (report.per_sp_per_ap_airtime.cols() == 0) return 0.0;
  return report.per_sp_per_ap_airtime.row(k).minCoeff();
}

}  // namespace sdwn::wlan
