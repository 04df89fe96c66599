#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "sdwn/core/random.hpp"
#include "sdwn/metrics/metrics.hpp"

using namespace sdwn;
using namespace sdwn::metrics;

TEST_CASE("jain index examples") {
  CHECK(jain_index({1.0, 1.0}) == doctest::Approx(1.0));
  CHECK(jain_index({1.0, 0.0}) == doctest::Approx(0.5));
  CHECK(jain_index({2.5, 1.5}) == doctest::Approx(16.0 / 17.0));
}

TEST_CASE("jain index rejects degenerate input") {
  CHECK_THROWS_AS(jain_index({0.0, 0.0}), UndefinedMetric);
  CHECK_THROWS_AS(jain_index({}), UndefinedMetric);
  CHECK_THROWS_AS(jain_index({1.0, -0.5}), UndefinedMetric);
  CHECK_THROWS_AS(jain_index({1.0, NAN}), UndefinedMetric);
}

TEST_CASE("jain index invariances and bounds") {
  Rng rng(42);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  std::uniform_int_distribution<int> k(1, 8);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> t(static_cast<std::size_t>(k(rng)));
    for (auto& v : t) v = u(rng);
    const double j = jain_index(t);
    CHECK(j <= 1.0 + 1e-12);
    CHECK(j >= 1.0 / static_cast<double>(t.size()) - 1e-12);

    auto perm = t;
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(jain_index(perm) == doctest::Approx(j).epsilon(1e-12));
    auto scaled = t;
    const double c = 0.01 + u(rng);
    for (auto& v : scaled) v *= c;
    CHECK(jain_index(scaled) == doctest::Approx(j).epsilon(1e-12));
  }
}

TEST_CASE("cdf examples") {
  const auto c = empirical_cdf({3.0, 1.0, 2.0});
  CHECK(c.at(2.0) == doctest::Approx(2.0 / 3.0));
  CHECK(c.at(0.5) == 0.0);
  CHECK(c.at(3.0) == 1.0);
  CHECK(c.median() == 2.0);

  const auto flat = empirical_cdf({4.0, 4.0, 4.0});
  CHECK(flat.values.size() == 1);
  CHECK(flat.at(3.999) == 0.0);
  CHECK(flat.at(4.0) == 1.0);

  CHECK(empirical_cdf({1.0, 2.0, 3.0, 4.0}).median() == 2.0);
  CHECK(lower_median({}) == 0.0);
  CHECK_THROWS_AS(empirical_cdf({}), UndefinedMetric);
}

TEST_CASE("cdf is a valid step function and hits 1 at the maximum") {
  Rng rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(997);
  for (auto& x : v) x = std::round(n(rng) * 20.0) / 20.0;  // plenty of ties
  const auto c = empirical_cdf(v);
  CHECK(std::is_sorted(c.values.begin(), c.values.end()));
  CHECK(std::adjacent_find(c.values.begin(), c.values.end()) == c.values.end());
  CHECK(std::is_sorted(c.probabilities.begin(), c.probabilities.end()));
  CHECK(c.probabilities.front() >= 1.0 / 997.0);
  CHECK(c.at(*std::max_element(v.begin(), v.end())) == 1.0);
  for (double x : {-1.0, 0.0, 0.3}) {
    const auto cnt = std::count_if(v.begin(), v.end(), [&](double s) { return s <= x; });
    CHECK(c.at(x) == doctest::Approx(static_cast<double>(cnt) / 997.0));
  }
}

TEST_CASE("cdf of uniform draws tracks the uniform cdf") {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(10000);
  for (auto& x : v) x = u(rng);
  const auto c = empirical_cdf(v);
  // sup |F_n - F| is attained at the sample points, from either side of each step
  double gap = 0.0;
  double below = 0.0;
  for (std::size_t i = 0; i < c.values.size(); ++i) {
    gap = std::max({gap, std::abs(c.probabilities[i] - c.values[i]), std::abs(below - c.values[i])});
    below = c.probabilities[i];
  }
  CHECK(gap < 0.02);
}

TEST_CASE("aggregate trial") {
  const std::vector<double> rates = {1.0, 2.0, 3.0, 4.0};
  SUBCASE("single slice") {
    const auto m = aggregate_trial(rates, {{0, 0.0, {0, 1, 2, 3}}}, {});
    CHECK(m.jain_index == 1.0);
    CHECK(m.total_throughput == doctest::Approx(10.0));
    CHECK(m.edge_median_rate == 0.0);
  }
  SUBCASE("symmetric slices") {
    const auto m = aggregate_trial({2.0, 2.0}, {{0, 0.0, {0}}, {1, 0.0, {1}}}, {});
    CHECK(m.per_sp_throughput[0] == m.per_sp_throughput[1]);
    CHECK(m.jain_index == doctest::Approx(1.0));
  }
  SUBCASE("partition and medians") {
    const auto m = aggregate_trial(rates, {{0, 0.0, {0, 3}}, {1, 0.0, {1, 2}}}, {true, false, true, false});
    CHECK(m.per_sp_throughput[0] + m.per_sp_throughput[1] == doctest::Approx(m.total_throughput).epsilon(1e-9));
    CHECK(m.edge_median_rate == 1.0);
    CHECK(m.center_median_rate == 2.0);
  }
  SUBCASE("slice without users does not count") {
    const auto m = aggregate_trial(rates, {{0, 0.0, {0, 1, 2, 3}}, {1, 0.0, {}}}, {});
    CHECK(m.jain_index == 1.0);
    CHECK(m.per_sp_throughput.size() == 2);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(aggregate_trial(rates, {{0, 0.0, {7}}}, {}), ConfigError);
    CHECK_THROWS_AS(aggregate_trial(rates, {{0, 0.0, {0}}}, {true}), ConfigError);
  }
}
