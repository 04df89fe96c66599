#pragma once

#include <cstdint>
#include <vector>

#include "sdwn/core/types.hpp"

namespace sdwn {

/// Homogeneous PPP over `region`: N ~ Poisson(lambda_mean * ap_count), then
/// N i.i.d. uniform positions. Users get ids 0..N-1 and slice 0.
std::vector<User> generate_ppp_users(const Region& region, const DeploymentParams& deployment,
                                     std::size_t ap_count, std::uint64_t seed);

/// Bernoulli slice assignment: slice 0 with probability rho1, else slice 1.
/// Returns slice ids indexed by position in `users`.
std::vector<std::size_t> assign_slices(const std::vector<User>& users, const LoadSplit& split,
                                       std::uint64_t seed);

/// Writes the result of assign_slices back into the users.
void apply_slices(std::vector<User>& users, const std::vector<std::size_t>& slice_ids);

/// PPP deployment where a fraction of users is rejection-sampled inside the
/// edge annulus (nearest-site distance >= edge_radius) and the rest inside it.
std::vector<User> generate_edge_weighted_users(const Region& region,
                                               const std::vector<AccessPoint>& sites,
                                               const DeploymentParams& deployment,
                                               double edge_fraction, double edge_radius,
                                               std::uint64_t seed);

}  // namespace sdwn
