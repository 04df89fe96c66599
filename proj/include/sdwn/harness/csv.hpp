#pragma once

#include <iosfwd>
#include <vector>

#include "sdwn/harness/runner.hpp"

namespace sdwn::harness {

/// Header plus one row per record; floats as %.9g. wall_time is written as 0
/// unless `timing` is set, so output is byte-stable.
void write_csv(std::ostream& out, const std::vector<ResultRecord>& rows, bool timing = false);

/// Reads what write_csv produced. Throws ConfigError on a malformed file.
std::vector<ResultRecord> read_csv(std::istream& in);

enum class ReportStat { cdf, median, jain };
enum class ReportFilter { edge, center, all };

/// Per (policy, lambda_mean, rho1) group, in first-appearance order. The filter
/// picks the column: edge_median_rate, center_median_rate or total_throughput.
/// jain summarizes jain_index and only accepts the `all` filter.
void write_report(std::ostream& out, const std::vector<ResultRecord>& rows, ReportStat stat, ReportFilter filter);

}  // namespace sdwn::harness
