#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "doctest.h"
#include "sdwn/harness/config.hpp"
#include "sdwn/harness/csv.hpp"
#include "sdwn/harness/runner.hpp"
#include "sdwn/wlan/oracle.hpp"

using namespace sdwn;
using namespace sdwn::harness;

namespace {

std::string path(const char* name) { return std::string(SDWN_CONFIG_DIR) + "/" + name; }

ScenarioConfig small_wlan(std::size_t trials) {
  auto c = load_config(path("wlan-4ap.cfg"));
  c.trials = trials;
  for (auto& s : c.slices) s.guarantee_value = 0.0;
  return c;
}

std::string csv(const std::vector<ResultRecord>& rows) {
  std::ostringstream s;
  write_csv(s, rows);
  return s.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config round trip") {
  for (const char* name : {"wlan-4ap.cfg", "cellular-4bs.cfg", "oracle-wlan-2user.cfg", "oracle-cellular-2bs.cfg"}) {
    const auto a = load_config(path(name));
    const auto text = serialize_config(a);
    const auto b = parse_config(text);
    CHECK(a == b);
    CHECK(serialize_config(b) == text);
  }
  const auto c = load_config(path("cellular-4bs.cfg"));
  CHECK(c.cellular_solver.objective == cellular::CellularObjective::proportional_fair);
  CHECK(c.layout.size() == 4);
  CHECK(c.layout[3].id == 3);
}

TEST_CASE("config errors list every problem") {
  const std::string base = serialize_config(load_config(path("wlan-4ap.cfg")));
  CHECK(error_of("{not json").find("not valid JSON") != std::string::npos);

  auto typo = base;
  typo.replace(typo.find("\"trials\""), 8, "\"trails\"");
  const auto e1 = error_of(typo);
  CHECK(e1.find("trails: unknown field") != std::string::npos);

  auto bad = base;
  bad.replace(bad.find("\"rho1\": 0.5"), 11, "\"rho1\": 1.5");
  bad.replace(bad.find("\"lambda_mean\": 2.0"), 18, "\"lambda_mean\": -1.0");
  bad.replace(bad.find("\"policy\": \"sdwn\""), 16, "\"policy\": \"best\"");
  const auto e2 = error_of(bad);
  CHECK(e2.find("policy: unknown value") != std::string::npos);
  const auto e3 = error_of(bad.replace(bad.find("\"policy\": \"best\""), 16, "\"policy\": \"sdwn\""));
  CHECK(e3.find("load_split") != std::string::npos);
  CHECK(e3.find("deployment") != std::string::npos);

  CHECK(error_of("{}").find("scenario_id: missing") != std::string::npos);
  CHECK(error_of("{}").find("layout: missing") != std::string::npos);

  auto kinds = load_config(path("wlan-4ap.cfg"));
  kinds.slices[0].guarantee_kind = control::GuaranteeKind::min_rate;
  CHECK_THROWS_AS(kinds.validate(), ConfigError);
  auto outside = load_config(path("wlan-4ap.cfg"));
  outside.layout[0].position = {900.0, 0.0};
  CHECK_THROWS_AS(outside.validate(), ConfigError);
}

TEST_CASE("run: zero trials, determinism, seed independence of earlier trials") {
  auto c = small_wlan(0);
  CHECK(run_scenario(c).empty());

  c.trials = 4;
  const auto a = run_scenario(c);
  REQUIRE(a.size() == 4);
  for (std::size_t t = 0; t < a.size(); ++t) CHECK(a[t].trial == t);
  CHECK(csv(a) == csv(run_scenario(c)));

  c.trials = 6;
  const auto more = run_scenario(c);
  CHECK(csv({more.begin(), more.begin() + 4}) == csv(a));
}

TEST_CASE("run: max-snr with one WLAN user gets that user's rate") {
  auto c = load_config(path("oracle-wlan-2user.cfg"));
  c.users->pop_back();
  c.slices.pop_back();
  c.policy = Policy::max_snr;
  const auto rows = run_scenario(c);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].total_throughput == doctest::Approx(54.0));
  CHECK(rows[0].solver_status == "baseline");
  CHECK(rows[0].jain_index == 1.0);
}

TEST_CASE("run: strict overbooking is recorded as scaled_infeasible") {
  auto c = load_config(path("oracle-wlan-overbooked.cfg"));
  const auto rows = run_scenario(c);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].solver_status == "scaled_infeasible");
  CHECK(rows[0].scaling_factor == doctest::Approx(0.625).epsilon(0.01));
  CHECK(rows[0].sp1_throughput == doctest::Approx(rows[0].sp2_throughput).epsilon(0.01));
}

TEST_CASE("run: cellular records carry edge statistics") {
  auto c = load_config(path("cellular-4bs.cfg"));
  c.trials = 2;
  for (const auto& o : run_outcomes(c, Policy::max_snr)) {
    CHECK(o.edge_flags.size() == o.user_rates.size());
    CHECK(o.record.sp1_throughput + o.record.sp2_throughput ==
          doctest::Approx(o.record.total_throughput).epsilon(1e-9));
  }
}

TEST_CASE("sweep grid parsing") {
  const auto p = parse_sweep_param("lambda_mean=1:10:1");
  CHECK(p.values.size() == 10);
  CHECK(p.values.back() == doctest::Approx(10.0));
  CHECK(parse_sweep_param("rho1=0.1:0.9:0.2").values.size() == 5);
  CHECK(parse_sweep_param("rho1=0.5:0.5:0.1").values.size() == 1);
  CHECK_THROWS_AS(parse_sweep_param("rho1=0.5:0.1:0.1"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_param("rho1=0.1:0.5:0"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_param("rho1=0.1:0.5"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_param("trials=1:2:1"), ConfigError);
  CHECK_THROWS_AS(parse_sweep_param("rho1=a:1:0.1"), ConfigError);
}

TEST_CASE("sweep: cardinality, row order, degenerate grid") {
  const auto c = small_wlan(20);
  const auto rows = sweep(c, {parse_sweep_param("lambda_mean=1:10:1")});
  REQUIRE(rows.size() == 400);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].lambda_mean == doctest::Approx(1.0 + static_cast<double>(i / 40)));
    CHECK(rows[i].policy == ((i % 40) < 20 ? Policy::sdwn : Policy::max_snr));
    CHECK(rows[i].trial == i % 20);
  }

  auto one = small_wlan(5);
  const auto s = sweep(one, {{"lambda_mean", {one.deployment.lambda_mean}}});
  const auto sd = run_scenario(one);
  one.policy = Policy::max_snr;
  const auto ms = run_scenario(one);
  auto both = sd;
  both.insert(both.end(), ms.begin(), ms.end());
  CHECK(csv(s) == csv(both));

  CHECK_THROWS_AS(sweep(one, {{"rho1", {0.5, 1.5}}}), ConfigError);
  CHECK_THROWS_AS(sweep(one, {{"rho1", {0.5, 0.3}}}), ConfigError);
  CHECK_THROWS_AS(sweep(one, {}), ConfigError);
}

TEST_CASE("sweep: SDWN mean throughput is non-decreasing in lambda") {
  const auto c = small_wlan(50);
  const auto rows = sweep(c, {parse_sweep_param("lambda_mean=1:10:1")});
  std::vector<double> mean(10, 0.0);
  for (const auto& r : rows) {
    if (r.policy == Policy::sdwn) mean[static_cast<std::size_t>(r.lambda_mean) - 1] += r.total_throughput / 50.0;
  }
  int ok = 0;
  for (std::size_t i = 1; i < mean.size(); ++i) ok += mean[i] >= mean[i - 1] ? 1 : 0;
  CHECK(static_cast<double>(ok) / 9.0 >= 0.95);
}

TEST_CASE("thread count does not change output") {
  auto c = load_config(path("cellular-4bs.cfg"));
  c.trials = 3;
  const auto ref = csv(sweep(c, {{"lambda_mean", {1.0, 2.0}}}, {1}));
  CHECK(csv(sweep(c, {{"lambda_mean", {1.0, 2.0}}}, {4})) == ref);
}

TEST_CASE("worker count honors SDWN_SIM_THREADS") {
  setenv("SDWN_SIM_THREADS", "2", 1);
  CHECK(worker_count(8) == 2);
  CHECK(worker_count(1) == 1);
  setenv("SDWN_SIM_THREADS", "zero", 1);
  CHECK_THROWS_AS(worker_count(8), ConfigError);
  unsetenv("SDWN_SIM_THREADS");
  CHECK(worker_count(3) == 3);
}

TEST_CASE("csv round trip and reports") {
  auto c = load_config(path("cellular-4bs.cfg"));
  c.trials = 3;
  const auto rows = sweep(c, {{"lambda_mean", {1.0, 2.0}}});
  std::stringstream s;
  write_csv(s, rows);
  const auto back = read_csv(s);
  REQUIRE(back.size() == rows.size());
  CHECK(csv(back) == csv(rows));

  std::ostringstream med;
  write_report(med, back, ReportStat::median, ReportFilter::edge);
  const std::string table = med.str();
  CHECK(table.rfind("policy,lambda_mean,rho1,trials,median,mean\n", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 5);
  std::ostringstream cdf;
  write_report(cdf, back, ReportStat::cdf, ReportFilter::all);
  CHECK(cdf.str().find(",1\n") != std::string::npos);
  std::ostringstream jain;
  write_report(jain, back, ReportStat::jain, ReportFilter::all);
  CHECK(jain.str().find("sdwn,1,0.5,3,") != std::string::npos);
  std::ostringstream sink;
  CHECK_THROWS_AS(write_report(sink, back, ReportStat::jain, ReportFilter::edge), ConfigError);

  std::istringstream broken("scenario_id,trial\n");
  CHECK_THROWS_AS(read_csv(broken), ConfigError);
}

TEST_CASE("oracle verification") {
  const auto w = verify_oracle(load_config(path("oracle-wlan-2user.cfg")));
  CHECK(w.passed);
  CHECK(w.solver_objective / 54.0 == doctest::Approx(0.5056).epsilon(0.01));
  CHECK(w.gap <= 1e-2);

  const auto inf = verify_oracle(load_config(path("oracle-wlan-overbooked.cfg")));
  CHECK_FALSE(inf.solver_feasible);
  CHECK_FALSE(inf.oracle_feasible);
  CHECK(inf.passed);

  const auto cell = verify_oracle(load_config(path("oracle-cellular-2bs.cfg")));
  CHECK(cell.passed);
  CHECK(cell.gap <= 0.05);

  auto big = load_config(path("oracle-wlan-2user.cfg"));
  for (int i = 0; i < 4; ++i) big.users->push_back({{50.0, 45.0 + i}, 0});
  CHECK_THROWS_AS(verify_oracle(big), InstanceTooLarge);
}
