#include "sdwn/cellular/baseline.hpp"

namespace sdwn::cellular {

CellularAllocation max_snr_cellular(const GainTensor& gains, const std::vector<double>& budgets,
                                    double noise_power) {
  gains.validate();
  if (budgets.size() != gains.bss()) throw ConfigError("max-snr: one power budget per BS required");
  const std::size_t n_sc = gains.subcarriers();
  auto alloc = CellularAllocation::empty(gains.users(), gains.bss(), n_sc);
  if (gains.bss() == 0 || n_sc == 0) return alloc;
  const Eigen::MatrixXd avg = gains.averaged();

  std::vector<std::vector<int>> members(gains.bss());
  for (std::size_t i = 0; i < gains.users(); ++i) {
    std::size_t best = 0;
    double best_snr = -1.0;
    for (std::size_t b = 0; b < gains.bss(); ++b) {
      const double snr = budgets[b] / static_cast<double>(n_sc) *
                         avg(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(b)) / noise_power;
      if (snr > best_snr) {
        best_snr = snr;
        best = b;
      }
    }
    alloc.association[i] = static_cast<int>(best);
    members[best].push_back(static_cast<int>(i));
  }
  for (std::size_t b = 0; b < gains.bss(); ++b) {
    if (members[b].empty()) continue;
    for (std::size_t n = 0; n < n_sc; ++n) {
      const auto bi = static_cast<Eigen::Index>(b);
      const auto ni = static_cast<Eigen::Index>(n);
      alloc.owner(bi, ni) = members[b][n % members[b].size()];
      alloc.power(bi, ni) = budgets[b] / static_cast<double>(n_sc);
    }
  }
  return alloc;
}

}  // namespace sdwn::cellular
