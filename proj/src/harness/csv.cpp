#include "sdwn/harness/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "sdwn/metrics/metrics.hpp"

namespace sdwn::harness {

namespace {

constexpr const char* kHeader =
    "scenario_id,trial,policy,lambda_mean,rho1,total_throughput,sp1_throughput,sp2_throughput,jain_index,"
    "edge_median_rate,center_median_rate,solver_status,wall_time,scaling_factor";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

double number(const std::string& s, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw ConfigError("csv line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<ResultRecord>& rows, bool timing) {
  out << kHeader << '\n';
  for (const auto& r : rows) {
    out << r.scenario_id << ',' << r.trial << ',' << to_string(r.policy) << ',' << fmt(r.lambda_mean) << ','
        << fmt(r.rho1) << ',' << fmt(r.total_throughput) << ',' << fmt(r.sp1_throughput) << ','
        << fmt(r.sp2_throughput) << ',' << fmt(r.jain_index) << ',' << fmt(r.edge_median_rate) << ','
        << fmt(r.center_median_rate) << ',' << r.solver_status << ',' << fmt(timing ? r.wall_time : 0.0) << ','
        << fmt(r.scaling_factor) << '\n';
  }
}

std::vector<ResultRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kHeader) throw ConfigError("csv: missing or unexpected header row");
  std::vector<ResultRecord> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 14) throw ConfigError("csv line " + std::to_string(n) + ": expected 14 fields");
    ResultRecord r;
    r.scenario_id = f[0];
    r.trial = static_cast<std::size_t>(number(f[1], n));
    if (f[2] == "sdwn") {
      r.policy = Policy::sdwn;
    } else if (f[2] == "max_snr") {
      r.policy = Policy::max_snr;
    } else {
      throw ConfigError("csv line " + std::to_string(n) + ": unknown policy '" + f[2] + "'");
    }
    r.lambda_mean = number(f[3], n);
    r.rho1 = number(f[4], n);
    r.total_throughput = number(f[5], n);
    r.sp1_throughput = number(f[6], n);
    r.sp2_throughput = number(f[7], n);
    r.jain_index = number(f[8], n);
    r.edge_median_rate = number(f[9], n);
    r.center_median_rate = number(f[10], n);
    r.solver_status = f[11];
    r.wall_time = number(f[12], n);
    r.scaling_factor = number(f[13], n);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_report(std::ostream& out, const std::vector<ResultRecord>& rows, ReportStat stat, ReportFilter filter) {
  if (stat == ReportStat::jain && filter != ReportFilter::all) {
    throw ConfigError("report: the jain index is per trial over both slices; use --filter all");
  }
  struct Group {
    Policy policy;
    double lambda;
    double rho1;
    std::vector<const ResultRecord*> rows;
  };
  std::vector<Group> groups;
  for (const auto& r : rows) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return g.policy == r.policy && g.lambda == r.lambda_mean && g.rho1 == r.rho1;
    });
    if (it == groups.end()) it = groups.insert(groups.end(), Group{r.policy, r.lambda_mean, r.rho1, {}});
    it->rows.push_back(&r);
  }
  const auto column = [&](const ResultRecord& r) {
    switch (filter) {
      case ReportFilter::edge:
        return r.edge_median_rate;
      case ReportFilter::center:
        return r.center_median_rate;
      default:
        return r.total_throughput;
    }
  };

  switch (stat) {
    case ReportStat::median:
      out << "policy,lambda_mean,rho1,trials,median,mean\n";
      break;
    case ReportStat::cdf:
      out << "policy,lambda_mean,rho1,value,probability\n";
      break;
    case ReportStat::jain:
      out << "policy,lambda_mean,rho1,trials,mean_jain,min_jain\n";
      break;
  }
  for (const auto& g : groups) {
    const std::string key = std::string(to_string(g.policy)) + ',' + fmt(g.lambda) + ',' + fmt(g.rho1);
    std::vector<double> v;
    for (const auto* r : g.rows) v.push_back(stat == ReportStat::jain ? r->jain_index : column(*r));
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    if (stat == ReportStat::median) {
      out << key << ',' << v.size() << ',' << fmt(metrics::lower_median(v)) << ',' << fmt(mean) << '\n';
    } else if (stat == ReportStat::jain) {
      out << key << ',' << v.size() << ',' << fmt(mean) << ',' << fmt(*std::min_element(v.begin(), v.end())) << '\n';
    } else {
      const auto cdf = metrics::empirical_cdf(v);
      for (std::size_t i = 0; i < cdf.values.size(); ++i) {
        out << key << ',' << fmt(cdf.values[i]) << ',' << fmt(cdf.probabilities[i]) << '\n';
      }
    }
  }
}

}  // namespace sdwn::harness
