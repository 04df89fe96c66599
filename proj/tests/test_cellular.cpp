#include <cmath>
#include <random>

#include "doctest.h"
#include "sdwn/cellular/baseline.hpp"
#include "sdwn/cellular/model.hpp"
#include "sdwn/cellular/oracle.hpp"
#include "sdwn/cellular/solver.hpp"
#include "sdwn/core/random.hpp"

using namespace sdwn;
using namespace sdwn::cellular;

namespace {

constexpr double kNoise = 1e-13;

std::vector<AccessPoint> sites(std::initializer_list<Point> pts) {
  std::vector<AccessPoint> out;
  for (const auto& p : pts) out.push_back({out.size(), p, 0, 1.0});
  return out;
}

GainTensor geometry(const std::vector<AccessPoint>& bss, const std::vector<Point>& users, std::size_t subcarriers) {
  Topology t;
  t.region = {1000.0, 1000.0};
  t.aps = bss;
  for (const auto& p : users) t.users.push_back({t.users.size(), p, 0});
  return gain_tensor(t, ChannelParams{}, subcarriers);
}

CellularProblem problem_of(GainTensor g, std::vector<SliceSpec> slices = {}) {
  CellularProblem p;
  p.budgets.assign(g.bss(), 1.0);
  p.gains = std::move(g);
  p.noise_power = kNoise;
  p.slices = std::move(slices);
  return p;
}

// Random tiny instance: 2 BSs on a line, users anywhere in the square.
CellularProblem random_tiny(Rng& rng, std::size_t users, std::size_t bss, std::size_t subcarriers) {
  std::uniform_real_distribution<double> u(0.0, 1000.0);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < users; ++i) pts.push_back({u(rng), u(rng)});
  const auto layout = bss == 1 ? sites({{500, 500}}) : sites({{250, 500}, {750, 500}});
  std::vector<SliceSpec> slices{{0, 0.0, {}}, {1, 0.0, {}}};
  for (std::size_t i = 0; i < users; ++i) slices[i % 2].user_ids.push_back(i);
  return problem_of(geometry(layout, pts, subcarriers), slices);
}

double slice_rate(const Eigen::VectorXd& r, const SliceSpec& s) {
  double t = 0.0;
  for (auto u : s.user_ids) t += r(static_cast<Eigen::Index>(u));
  return t;
}

}  // namespace

TEST_CASE("rates: single link at unit SNR") {
  GainTensor g(1, 1, 1, kNoise);
  auto a = CellularAllocation::empty(1, 1, 1);
  a.association[0] = 0;
  a.owner(0, 0) = 0;
  a.power(0, 0) = 1.0;
  const auto rep = cellular_rates(a, g, {1.0}, kNoise, {});
  CHECK(rep.per_user_rate(0) == doctest::Approx(1.0));
}

TEST_CASE("rates: silent interferer leaves the isolated rate; equal interferer gives SINR one") {
  GainTensor g(2, 2, 1, 1e-6);
  auto a = CellularAllocation::empty(2, 2, 1);
  a.association = {0, 1};
  a.owner(0, 0) = 0;
  a.power(0, 0) = 1.0;
  const double isolated = std::log2(1.0 + 1e-6 / kNoise);
  CHECK(user_rates(a, g, kNoise)(0) == doctest::Approx(isolated));

  a.owner(1, 0) = 1;
  a.power(1, 0) = 1.0;
  const auto r = user_rates(a, g, kNoise);
  CHECK(r(0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("allocation invariants are enforced before rates") {
  GainTensor g(2, 2, 2, 1e-9);
  auto a = CellularAllocation::empty(2, 2, 2);
  a.association = {0, 1};
  a.owner(0, 0) = 1;  // user 1 belongs to BS 1
  a.power(0, 0) = 0.5;
  CHECK_THROWS_AS(cellular_rates(a, g, {1.0, 1.0}, kNoise, {}), ConfigError);

  a.owner(0, 0) = 0;
  a.power(0, 0) = 0.7;
  a.owner(0, 1) = 0;
  a.power(0, 1) = 0.7;
  CHECK_THROWS_AS(a.validate({1.0, 1.0}), ConfigError);

  a = CellularAllocation::empty(2, 2, 2);
  a.power(1, 1) = 0.1;
  CHECK_THROWS_AS(a.validate({1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(a.validate({1.0}), ConfigError);
}

TEST_CASE("property: removing interference never lowers any rate") {
  Rng rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t users = 4, bss = 3, sc = 3;
    GainTensor g(users, bss, sc);
    for (std::size_t i = 0; i < users; ++i) {
      for (std::size_t b = 0; b < bss; ++b) {
        for (std::size_t n = 0; n < sc; ++n) g(i, b, n) = 1e-10 * u(rng);
      }
    }
    auto a = CellularAllocation::empty(users, bss, sc);
    for (std::size_t i = 0; i < users; ++i) a.association[i] = static_cast<int>(i % bss);
    for (std::size_t b = 0; b < bss; ++b) {
      for (std::size_t n = 0; n < sc; ++n) {
        std::vector<int> mine;
        for (std::size_t i = 0; i < users; ++i) {
          if (a.association[i] == static_cast<int>(b)) mine.push_back(static_cast<int>(i));
        }
        a.owner(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(n)) = mine[n % mine.size()];
        a.power(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(n)) = u(rng) / static_cast<double>(sc);
      }
    }
    const Eigen::VectorXd before = user_rates(a, g, kNoise);
    const auto b = static_cast<Eigen::Index>(trial % bss);
    const auto n = static_cast<Eigen::Index>(trial % sc);
    const int victim_owner = a.owner(b, n);
    a.power(b, n) = 0.0;
    const Eigen::VectorXd after = user_rates(a, g, kNoise);
    for (Eigen::Index i = 0; i < after.size(); ++i) {
      if (i == victim_owner) continue;
      CHECK(after(i) >= before(i));
    }
  }
}

TEST_CASE("solver: collocated users take their own BS and both subcarriers") {
  const auto layout = sites({{100, 500}, {900, 500}});
  const auto p = problem_of(geometry(layout, {{100, 500}, {900, 500}}, 2));
  const auto sol = solve_joint_allocation(p, {});
  REQUIRE(sol.status == CellularStatus::optimal);
  CHECK(sol.allocation.association == std::vector<int>{0, 1});
  for (Eigen::Index b = 0; b < 2; ++b) {
    for (Eigen::Index n = 0; n < 2; ++n) {
      CHECK(sol.allocation.owner(b, n) == b);
      CHECK(sol.allocation.power(b, n) == doctest::Approx(0.5).epsilon(1e-6));
    }
  }
  const auto oracle = brute_force_cellular_oracle(p, {});
  CHECK(oracle.allocation.association == std::vector<int>{0, 1});
}

TEST_CASE("solver: one user, equal subcarriers, equal power split") {
  const auto p = problem_of(geometry(sites({{500, 500}}), {{600, 500}}, 2));
  const auto sol = solve_joint_allocation(p, {});
  REQUIRE(sol.status == CellularStatus::optimal);
  CHECK(sol.allocation.power(0, 0) == doctest::Approx(0.5));
  CHECK(sol.allocation.power(0, 1) == doctest::Approx(0.5));
}

TEST_CASE("solver: midpoint user instance stays within 5% of the oracle") {
  const auto layout = sites({{250, 500}, {750, 500}});
  const auto p = problem_of(geometry(layout, {{200, 450}, {500, 500}, {800, 560}}, 4));
  CellularSolverOptions opt;
  opt.power_levels = 3;
  const auto sol = solve_joint_allocation(p, opt);
  const auto oracle = brute_force_cellular_oracle(p, opt);
  REQUIRE(sol.status == CellularStatus::optimal);
  REQUIRE(oracle.feasible);
  CHECK(sol.total_rate >= 0.95 * oracle.total_rate);
}

TEST_CASE("max-snr cellular baseline") {
  const auto layout = sites({{250, 500}, {750, 500}});
  auto a = max_snr_cellular(geometry(layout, {{500, 500}}, 4), {1.0, 1.0}, kNoise);
  CHECK(a.association[0] == 0);
  for (Eigen::Index n = 0; n < 4; ++n) {
    CHECK(a.owner(0, n) == 0);
    CHECK(a.power(0, n) == doctest::Approx(0.25));
    CHECK(a.owner(1, n) == kUnassigned);
    CHECK(a.power(1, n) == 0.0);
  }

  a = max_snr_cellular(geometry(layout, {{200, 500}, {300, 500}}, 4), {1.0, 1.0}, kNoise);
  CHECK(a.owner(0, 0) == 0);
  CHECK(a.owner(0, 1) == 1);
  CHECK(a.owner(0, 2) == 0);
  CHECK(a.owner(0, 3) == 1);
  a.validate({1.0, 1.0});
}

TEST_CASE("oracle: size limits, infeasible reservations, full power for a lone user") {
  Rng rng(4);
  auto big = random_tiny(rng, 5, 2, 2);
  CHECK_THROWS_AS(brute_force_cellular_oracle(big, {}), InstanceTooLarge);
  CellularSolverOptions four;
  four.power_levels = 4;
  CHECK_THROWS_AS(brute_force_cellular_oracle(random_tiny(rng, 2, 2, 2), four), InstanceTooLarge);

  auto p = random_tiny(rng, 2, 2, 2);
  p.slices[0].reservation = 1e4;
  const auto inf = brute_force_cellular_oracle(p, {});
  CHECK_FALSE(inf.feasible);
  CHECK(inf.scaling_factor < 1.0);
  CHECK(solve_joint_allocation(p, {}).status == CellularStatus::infeasible);

  const auto lone = brute_force_cellular_oracle(problem_of(geometry(sites({{500, 500}}), {{520, 500}}, 3)), {});
  REQUIRE(lone.feasible);
  CHECK(lone.allocation.power.sum() == doctest::Approx(1.0));
}

TEST_CASE("cell-edge classification") {
  const auto two = sites({{250, 500}, {750, 500}});
  const std::vector<User> users{{0, {250, 500}, 0}, {1, {500, 500}, 0}};
  const auto flags = classify_cell_edge(users, two, 0.99);
  CHECK_FALSE(flags[0]);
  CHECK(flags[1]);

  const auto grid = sites({{250, 250}, {750, 250}, {250, 750}, {750, 750}});
  CHECK(cell_edge_radius(grid, 0.8) == doctest::Approx(200.0));
  CHECK(classify_cell_edge({{0, {500, 500}, 0}}, grid, 0.8)[0]);
  CHECK_THROWS_AS(classify_cell_edge(users, sites({{0, 0}}), 0.8), ConfigError);
  CHECK_THROWS_AS(classify_cell_edge(users, two, 1.0), ConfigError);
}

TEST_CASE("property: solver near or above the oracle on random tiny instances") {
  Rng rng(606);
  CellularSolverOptions opt;
  for (int trial = 0; trial < 6; ++trial) {
    const auto p = random_tiny(rng, 2 + static_cast<std::size_t>(trial % 3), 2, 2 + static_cast<std::size_t>(trial % 2));
    const auto sol = solve_joint_allocation(p, opt);
    const auto oracle = brute_force_cellular_oracle(p, opt);
    REQUIRE(sol.status == CellularStatus::optimal);
    sol.allocation.validate(p.budgets);
    CHECK(sol.total_rate >= 0.95 * oracle.total_rate);
  }
}

TEST_CASE("property: baseline containment and full budgets without reservations") {
  Rng rng(12);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = random_tiny(rng, 3 + static_cast<std::size_t>(trial), 2, 4);
    const auto base = max_snr_cellular(p.gains, p.budgets, p.noise_power);
    const auto sol = solve_joint_allocation(p, {});
    REQUIRE(sol.status == CellularStatus::optimal);
    CHECK(sol.total_rate >= user_rates(base, p.gains, p.noise_power).sum());
    for (Eigen::Index b = 0; b < sol.allocation.owner.rows(); ++b) {
      if ((sol.allocation.owner.row(b).array() != kUnassigned).any()) {
        CHECK(sol.allocation.power.row(b).sum() == doctest::Approx(p.budgets[static_cast<std::size_t>(b)]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("property: reservations are met when feasible") {
  Rng rng(90);
  const CellularSolverOptions opt;
  for (int trial = 0; trial < 5; ++trial) {
    auto p = random_tiny(rng, 4, 2, 4);
    const auto free = solve_joint_allocation(p, opt);
    // Ask each slice for 40% of the unconstrained total.
    for (auto& s : p.slices) s.reservation = 0.4 * free.total_rate;
    const auto sol = solve_joint_allocation(p, opt);
    if (sol.status != CellularStatus::optimal) {
      CHECK(sol.scaling_factor < 1.0);
      continue;
    }
    for (const auto& s : p.slices) CHECK(slice_rate(sol.rates, s) >= s.reservation - opt.reservation_tolerance);
  }
}

TEST_CASE("proportional-fair objective serves every user") {
  const auto layout = sites({{250, 500}, {750, 500}});
  const auto p = problem_of(geometry(layout, {{250, 520}, {260, 480}, {500, 510}}, 4));
  CellularSolverOptions opt;
  opt.objective = CellularObjective::proportional_fair;
  const auto sol = solve_joint_allocation(p, opt);
  REQUIRE(sol.status == CellularStatus::optimal);
  CHECK(sol.rates.minCoeff() > 0.0);
}

TEST_CASE("solver is deterministic") {
  Rng rng(5);
  const auto p = random_tiny(rng, 4, 2, 4);
  const auto a = solve_joint_allocation(p, {});
  const auto b = solve_joint_allocation(p, {});
  CHECK(a.allocation.association == b.allocation.association);
  CHECK(a.allocation.owner == b.allocation.owner);
  CHECK(a.allocation.power == b.allocation.power);
}
