#pragma once

#include <vector>

#include "sdwn/cellular/model.hpp"

namespace sdwn::cellular {

/// Each user joins the BS with the highest reference SNR (subcarrier-averaged
/// gain at power P_b/N, lowest BS id on ties). Every BS with users spreads
/// P_b/N over all subcarriers, handed round-robin to its users in id order.
CellularAllocation max_snr_cellular(const GainTensor& gains, const std::vector<double>& budgets,
                                    double noise_power);

}  // namespace sdwn::cellular
