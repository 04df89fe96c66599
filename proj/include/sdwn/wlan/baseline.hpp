#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sdwn/wlan/throughput.hpp"

namespace sdwn::wlan {

struct MaxSnrAssociation {
  TauMatrix tau;
  std::vector<int> ap_of_user;  // -1: out of coverage everywhere
};

/// Each user joins its highest-SNR AP (lowest AP id on ties); the n users of
/// an AP share it symmetrically with tau = 1/n. `snr` and `rates` are users x APs.
MaxSnrAssociation max_snr_wlan(const Eigen::MatrixXd& snr, const Eigen::MatrixXd& rates);

}  // namespace sdwn::wlan
