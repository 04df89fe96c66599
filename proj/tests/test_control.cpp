#include <cmath>
#include <random>

#include "doctest.h"
#include "sdwn/control/control_plane.hpp"
#include "sdwn/core/random.hpp"
#include "sdwn/wlan/throughput.hpp"

using namespace sdwn;
using namespace sdwn::control;

namespace {

RanState wlan_ran(std::size_t id, const std::vector<std::pair<Point, std::size_t>>& users) {
  RanState s;
  s.ran_id = id;
  s.kind = RanKind::wlan;
  s.topology.region = {400.0, 400.0};
  s.topology.aps = {{0, {200.0, 200.0}, 0, 0.003}};
  for (const auto& [p, slice] : users) s.topology.users.push_back({s.topology.users.size(), p, slice});
  return s;
}

RanState cellular_ran(std::size_t id) {
  RanState s;
  s.ran_id = id;
  s.kind = RanKind::cellular;
  s.topology.region = {1000.0, 1000.0};
  s.topology.aps = {{0, {250.0, 500.0}, 0, 1.0}, {1, {750.0, 500.0}, 0, 1.0}};
  s.topology.users = {{0, {200.0, 450.0}, 0}, {1, {520.0, 520.0}, 1}, {2, {800.0, 600.0}, 1}};
  s.subcarriers = 2;
  return s;
}

MeasurementReport unit_rate_report(std::size_t ran) {
  MeasurementReport r;
  r.ran_id = ran;
  r.kind = RanKind::wlan;
  r.user_slice = {0, 1};
  r.rates = Eigen::MatrixXd::Ones(2, 1);
  r.snr = Eigen::MatrixXd::Constant(2, 1, 1e4);
  r.users_per_ap = {2};
  return r;
}

std::vector<SliceConstraint> airtime(double b1, double b2, IsolationLevel iso) {
  return {vrm_translate({0, GuaranteeKind::airtime, b1, iso}, RanKind::wlan),
          vrm_translate({1, GuaranteeKind::airtime, b2, iso}, RanKind::wlan)};
}

}  // namespace

TEST_CASE("vrm translation") {
  const auto a = vrm_translate({0, GuaranteeKind::airtime, 0.5, IsolationLevel::strict}, RanKind::wlan);
  CHECK(a.reservation == 0.5);
  CHECK_FALSE(a.scalable);
  const auto r = vrm_translate({1, GuaranteeKind::min_rate, 0.0, IsolationLevel::best_effort}, RanKind::cellular);
  CHECK(r.reservation == 0.0);
  CHECK(r.scalable);
  CHECK_THROWS_AS(vrm_translate({0, GuaranteeKind::airtime, 0.5, IsolationLevel::strict}, RanKind::cellular),
                  TranslationError);
  CHECK_THROWS_AS(vrm_translate({0, GuaranteeKind::min_rate, 1.0, IsolationLevel::strict}, RanKind::wlan),
                  TranslationError);
  CHECK_THROWS_AS(vrm_translate({0, GuaranteeKind::airtime, 1.5, IsolationLevel::strict}, RanKind::wlan),
                  ConfigError);
  CHECK_THROWS_AS(vrm_translate({0, GuaranteeKind::min_rate, -1.0, IsolationLevel::strict}, RanKind::cellular),
                  ConfigError);
}

TEST_CASE("crm: 0.2 / 0.2 on the two-user instance, then lrm to contention windows") {
  SdCrm crm({});
  const auto out = crm.schedule({{3, airtime(0.2, 0.2, IsolationLevel::strict), {}, {}}}, {unit_rate_report(3)});
  REQUIRE(out.size() == 1);
  CHECK(out[0].epoch == 1);
  CHECK(out[0].status == ScheduleStatus::optimal);
  const auto& tau = std::get<wlan::TauMatrix>(out[0].allocation);
  const double hi = std::max(tau(0, 0), tau(1, 0));
  const double lo = std::min(tau(0, 0), tau(1, 0));
  CHECK(hi == doctest::Approx(0.5528).epsilon(0.01));
  CHECK(lo == doctest::Approx(0.4472).epsilon(0.01));

  SdLrm lrm(3, RanKind::wlan);
  const auto cfg = lrm.apply(out[0]);
  const auto& cw = std::get<wlan::CwTable>(cfg.parameters);
  const std::size_t top = tau(0, 0) >= tau(1, 0) ? 0 : 1;
  CHECK(cw.at(top, 0) == 3u);
  CHECK(cw.at(1 - top, 0) == 4u);
  CHECK(lrm.last_epoch() == 1);
  CHECK_THROWS_AS(lrm.apply(out[0]), RejectedSchedule);

  const auto next = crm.schedule({{3, airtime(0.2, 0.2, IsolationLevel::strict), {}, {}}}, {unit_rate_report(3)});
  CHECK(next[0].epoch == 2);
  CHECK(lrm.apply(next[0]) .epoch == 2);
}

TEST_CASE("crm: no constraints means pure throughput maximization") {
  SdCrm crm({});
  const auto out = crm.schedule({{0, {}, {}, {}}}, {unit_rate_report(0)});
  REQUIRE(out[0].slices.size() == 2);
  CHECK(out[0].slices[0].reservation == 0.0);
  CHECK(out[0].slices[1].reservation == 0.0);
  const auto& tau = std::get<wlan::TauMatrix>(out[0].allocation);
  CHECK(tau(0, 0) == doctest::Approx(1.0));
  CHECK(tau(1, 0) == doctest::Approx(0.0));
}

TEST_CASE("crm: strict overbooking is surfaced, best effort is scaled") {
  SdCrm crm({});
  try {
    crm.schedule({{5, airtime(0.6, 0.6, IsolationLevel::strict), {}, {}}}, {unit_rate_report(5)});
    FAIL("expected InfeasibleSla");
  } catch (const InfeasibleSla& e) {
    CHECK(e.ran_id == 5);
    CHECK(e.scaling_factor < 1.0);
    CHECK(e.scaling_factor > 0.0);
  }

  const auto out = crm.schedule({{5, airtime(0.4, 0.4, IsolationLevel::best_effort), {}, {}}}, {unit_rate_report(5)});
  CHECK(out[0].status == ScheduleStatus::scaled);
  CHECK(out[0].scaling_factor == doctest::Approx(0.625).epsilon(0.01));
  const auto& tau = std::get<wlan::TauMatrix>(out[0].allocation);
  const auto rep = wlan::wlan_throughput(tau, unit_rate_report(5).rates, out[0].slices);
  CHECK(rep.per_sp_airtime(0) >= out[0].slices[0].reservation - 1e-4);
  CHECK(rep.per_sp_airtime(1) >= out[0].slices[1].reservation - 1e-4);
}

TEST_CASE("crm: missing report names the RAN") {
  SdCrm crm({});
  try {
    crm.schedule({{9, {}, {}, {}}}, {unit_rate_report(1)});
    FAIL("expected SchedulingError");
  } catch (const SchedulingError& e) {
    CHECK(std::string(e.what()).find("RAN 9") != std::string::npos);
  }
}

TEST_CASE("lrm reports") {
  auto s = wlan_ran(0, {});
  const auto empty = lrm_report(s);
  CHECK(empty.rates.rows() == 0);
  CHECK(empty.rates.cols() == 1);
  CHECK(empty.users_per_ap == std::vector<std::size_t>{0});

  s.topology.users.push_back({0, {210.0, 200.0}, 1});
  const auto one = lrm_report(s);
  CHECK(one.rates.rows() == 1);
  CHECK(one.user_slice == std::vector<std::size_t>{1});
  CHECK(one.users_per_ap == std::vector<std::size_t>{1});
  CHECK(one.snr(0, 0) > 0.0);

  const auto again = lrm_report(s);
  CHECK(again.rates == one.rates);
  CHECK(again.snr == one.snr);

  const auto c = lrm_report(cellular_ran(1));
  CHECK(c.gains.users() == 3);
  CHECK(c.gains.bss() == 2);
  CHECK(c.gains.subcarriers() == 2);
  CHECK(c.budgets == std::vector<double>{1.0, 1.0});
  CHECK(c.users_per_ap == std::vector<std::size_t>{1, 2});
}

TEST_CASE("two RANs of different kinds get kind-correct schedules") {
  SdCrm crm({});
  const auto w = wlan_ran(0, {{{190.0, 200.0}, 0}, {{210.0, 200.0}, 1}});
  const auto c = cellular_ran(1);
  const std::vector<ScheduleRequest> reqs = {
      {0, airtime(0.2, 0.2, IsolationLevel::strict), {}, {}},
      {1, {vrm_translate({0, GuaranteeKind::min_rate, 1.0, IsolationLevel::strict}, RanKind::cellular)}, {}, {}}};
  const auto out = crm.schedule(reqs, {lrm_report(w), lrm_report(c)});
  REQUIRE(out.size() == 2);
  CHECK(out[0].kind() == RanKind::wlan);
  CHECK(out[1].kind() == RanKind::cellular);

  SdLrm wl(0, RanKind::wlan);
  SdLrm cl(1, RanKind::cellular);
  CHECK_THROWS_AS(wl.apply(out[1]), RejectedSchedule);
  CHECK_THROWS_AS(cl.apply(out[0]), RejectedSchedule);

  const auto cfg = cl.apply(out[1]);
  const auto& tables = std::get<CellularTables>(cfg.parameters);
  const auto& alloc = std::get<cellular::CellularAllocation>(out[1].allocation);
  CHECK(tables.owner == alloc.owner);
  CHECK(tables.power == alloc.power);

  // a mislabeled schedule must not reach the wrong LRM either
  auto forged = out[1];
  forged.ran_id = 0;
  CHECK_THROWS_AS(wl.apply(forged), RejectedSchedule);
}

TEST_CASE("isolation: slice 1 keeps its airtime as slice 2 grows") {
  Rng rng(11);
  std::uniform_real_distribution<double> u(150.0, 250.0);
  for (std::size_t n2 = 1; n2 <= 8; ++n2) {
    std::vector<std::pair<Point, std::size_t>> users = {{{u(rng), u(rng)}, 0}, {{u(rng), u(rng)}, 0}};
    for (std::size_t k = 0; k < n2; ++k) users.push_back({{u(rng), u(rng)}, 1});
    const auto report = lrm_report(wlan_ran(0, users));
    SdCrm crm({});
    const auto out = crm.schedule({{0, airtime(0.3, 0.0, IsolationLevel::strict), {}, {}}}, {report});
    const auto& tau = std::get<wlan::TauMatrix>(out[0].allocation);
    const auto rep = wlan::wlan_throughput(tau, report.rates, out[0].slices);
    CHECK(rep.per_sp_airtime(0) >= 0.3 - 1e-4);
  }
}

TEST_CASE("end-to-end determinism") {
  const auto run = [] {
    const auto w = wlan_ran(0, {{{190.0, 200.0}, 0}, {{230.0, 180.0}, 1}, {{205.0, 260.0}, 1}});
    SdCrm crm({});
    SdLrm lrm(0, RanKind::wlan);
    const auto out = crm.schedule({{0, airtime(0.25, 0.25, IsolationLevel::strict), {}, {}}}, {lrm_report(w)});
    return lrm.apply(out[0]);
  };
  CHECK(run() == run());
}
