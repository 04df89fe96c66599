#pragma once

#include <stdexcept>
#include <vector>

#include "sdwn/core/types.hpp"

namespace sdwn::metrics {

/// A statistic was requested on data for which it is not defined.
class UndefinedMetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// J = (sum T)^2 / (K sum T^2). Needs non-negative entries, at least one positive.
double jain_index(const std::vector<double>& per_sp_throughput);

struct FairnessReport {
  std::vector<double> per_sp_throughput;
  double jain_index = 1.0;
};

/// Step CDF over a sample: values ascending, probabilities i/N for the i-th
/// smallest (ties collapse onto their last position).
class CdfTable {
 public:
  std::vector<double> values;
  std::vector<double> probabilities;

  /// F(x) = (count <= x) / N.
  double at(double x) const;
  /// Smallest sample value with F >= 0.5.
  double median() const;
};

CdfTable empirical_cdf(std::vector<double> values);

/// Lower median of a sample; 0 for an empty one.
double lower_median(std::vector<double> values);

struct TrialMetrics {
  double total_throughput = 0.0;
  std::vector<double> per_sp_throughput;
  double jain_index = 1.0;
  double edge_median_rate = 0.0;
  double center_median_rate = 0.0;
};

/// Per-SP totals, fairness over SPs that have at least one user (K <= 1 gives
/// J = 1) and medians of per-user rates split by edge flag. `edge_flags` may be
/// empty, in which case both medians are 0.
TrialMetrics aggregate_trial(const std::vector<double>& per_user_throughput, const std::vector<SliceSpec>& slices,
                             const std::vector<bool>& edge_flags);

}  // namespace sdwn::metrics
