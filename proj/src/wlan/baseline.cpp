#include "sdwn/wlan/baseline.hpp"

namespace sdwn::wlan {

MaxSnrAssociation max_snr_wlan(const Eigen::MatrixXd& snr, const Eigen::MatrixXd& rates) {
  if (snr.rows() != rates.rows() || snr.cols() != rates.cols()) {
    throw ConfigError("max_snr_wlan: snr and rate matrices differ in shape");
  }
  const auto users = static_cast<std::size_t>(snr.rows());
  const auto aps = static_cast<std::size_t>(snr.cols());
  MaxSnrAssociation out{TauMatrix::zeros(users, aps), std::vector<int>(users, -1)};
  std::vector<std::size_t> load(aps, 0);
  for (std::size_t i = 0; i < users; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    bool covered = false;
    for (Eigen::Index a = 0; a < rates.cols(); ++a) covered = covered || rates(row, a) > 0.0;
    if (!covered || aps == 0) continue;
    Eigen::Index best = 0;
    for (Eigen::Index a = 1; a < snr.cols(); ++a) {
      if (snr(row, a) > snr(row, best)) best = a;
    }
    out.ap_of_user[i] = static_cast<int>(best);
    ++load[static_cast<std::size_t>(best)];
  }
  for (std::size_t i = 0; i < users; ++i) {
    const int a = out.ap_of_user[i];
    if (a >= 0) out.tau(i, static_cast<std::size_t>(a)) = 1.0 / static_cast<double>(load[static_cast<std::size_t>(a)]);
  }
  return out;
}

}  // namespace sdwn::wlan
