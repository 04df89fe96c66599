#include "sdwn/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sdwn::metrics {

double jain_index(const std::vector<double>& t) {
  if (t.empty()) throw UndefinedMetric("jain index of an empty vector");
  double sum = 0.0;
  double sq = 0.0;
  for (double v : t) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw UndefinedMetric("jain index needs finite non-negative throughputs");
    sum += v;
    sq += v * v;
  }
  if (!(sum > 0.0)) throw UndefinedMetric("jain index undefined when every throughput is zero");
  return sum * sum / (static_cast<double>(t.size()) * sq);
}

double CdfTable::at(double x) const {
  const auto it = std::upper_bound(values.begin(), values.end(), x);
  if (it == values.begin()) return 0.0;
  return probabilities[static_cast<std::size_t>(it - values.begin()) - 1];
}

double CdfTable::median() const {
  const auto it = std::lower_bound(probabilities.begin(), probabilities.end(), 0.5);
  return values[static_cast<std::size_t>(it - probabilities.begin())];
}

CdfTable empirical_cdf(std::vector<double> v) {
  if (v.empty()) throw UndefinedMetric("empirical CDF of an empty sample");
  std::sort(v.begin(), v.end());
  CdfTable c;
  const auto n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i + 1 < v.size() && v[i + 1] == v[i]) continue;
    c.values.push_back(v[i]);
    c.probabilities.push_back(i + 1 == v.size() ? 1.0 : static_cast<double>(i + 1) / n);
  }
  return c;
}

double lower_median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  return empirical_cdf(std::move(v)).median();
}

TrialMetrics aggregate_trial(const std::vector<double>& per_user, const std::vector<SliceSpec>& slices,
                             const std::vector<bool>& edge_flags) {
  for (const auto& s : slices) {
    for (std::size_t u : s.user_ids) {
      if (u >= per_user.size()) throw ConfigError("aggregate: slice references an unknown user");
    }
  }
  if (!edge_flags.empty() && edge_flags.size() != per_user.size()) {
    throw ConfigError("aggregate: one edge flag per user required");
  }
  TrialMetrics m;
  m.total_throughput = std::accumulate(per_user.begin(), per_user.end(), 0.0);
  std::vector<double> active;
  for (const auto& s : slices) {
    double t = 0.0;
    for (std::size_t u : s.user_ids) t += per_user[u];
    m.per_sp_throughput.push_back(t);
    if (!s.user_ids.empty()) active.push_back(t);
  }
  m.jain_index = active.size() <= 1 ? 1.0 : jain_index(active);

  std::vector<double> edge;
  std::vector<double> center;
  for (std::size_t i = 0; i < edge_flags.size(); ++i) (edge_flags[i] ? edge : center).push_back(per_user[i]);
  m.edge_median_rate = lower_median(edge);
  m.center_median_rate = lower_median(center);
  return m;
}

}  // namespace sdwn::metrics
