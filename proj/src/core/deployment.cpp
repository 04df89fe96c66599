#include "sdwn/core/deployment.hpp"

#include <algorithm>
#include <limits>

#include "sdwn/core/random.hpp"

namespace sdwn {

std::vector<User> generate_ppp_users(const Region& region, const DeploymentParams& deployment,
                                     std::size_t ap_count, std::uint64_t seed) {
  region.validate();
  deployment.validate();
  Rng rng(seed);
  std::poisson_distribution<long> count_dist(deployment.lambda_mean * static_cast<double>(ap_count));
  const long n = ap_count == 0 ? 0 : count_dist(rng);
  std::uniform_real_distribution<double> ux(0.0, region.width);
  std::uniform_real_distribution<double> uy(0.0, region.height);
  std::vector<User> users(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < users.size(); ++i) {
    users[i].id = i;
    users[i].position.x = ux(rng);
    users[i].position.y = uy(rng);
  }
  return users;
}

std::vector<std::size_t> assign_slices(const std::vector<User>& users, const LoadSplit& split,
                                       std::uint64_t seed) {
  split.validate();
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::size_t> out(users.size());
  for (std::size_t i = 0; i < users.size(); ++i) {
    // Draw unconditionally so the stream stays aligned for degenerate rho1.
    const double draw = u(rng);
    out[i] = draw < split.rho1 ? 0 : 1;
  }
  return out;
}

void apply_slices(std::vector<User>& users, const std::vector<std::size_t>& slice_ids) {
  if (slice_ids.size() != users.size()) throw ConfigError("slice assignment size mismatch");
  for (std::size_t i = 0; i < users.size(); ++i) users[i].slice_id = slice_ids[i];
}

namespace {

double nearest_site_distance(const Point& p, const std::vector<AccessPoint>& sites) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : sites) best = std::min(best, distance(p, s.position));
  return best;
}

}  // namespace

std::vector<User> generate_edge_weighted_users(const Region& region,
                                               const std::vector<AccessPoint>& sites,
                                               const DeploymentParams& deployment,
                                               double edge_fraction, double edge_radius,
                                               std::uint64_t seed) {
  region.validate();
  deployment.validate();
  if (!(edge_fraction >= 0.0 && edge_fraction <= 1.0)) {
    throw ConfigError("deployment: edge_fraction must lie in [0, 1]");
  }
  if (sites.empty()) throw ConfigError("deployment: edge-weighted placement needs sites");
  Rng rng(seed);
  std::poisson_distribution<long> count_dist(deployment.lambda_mean *
                                             static_cast<double>(sites.size()));
  const long n = count_dist(rng);
  std::uniform_real_distribution<double> ux(0.0, region.width);
  std::uniform_real_distribution<double> uy(0.0, region.height);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  constexpr int kMaxRejections = 100000;

  std::vector<User> users(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < users.size(); ++i) {
    const bool want_edge = coin(rng) < edge_fraction;
    Point p;
    int attempts = 0;
    do {
      p = {ux(rng), uy(rng)};
      if (++attempts > kMaxRejections) {
        throw ConfigError("deployment: edge annulus or center zone is empty for this layout");
      }
    } while ((nearest_site_distance(p, sites) >= edge_radius) != want_edge);
    users[i].id = i;
    users[i].position = p;
  }
  return users;
}

}  // namespace sdwn
