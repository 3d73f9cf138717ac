#pragma once

#include <span>
#include <string>
#include <vector>

namespace redustat {

struct FiveNumberSummary {
  std::string column;
  std::size_t n = 0;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  std::vector<double> outliers;  // outside [q1 - 1.5 IQR, q3 + 1.5 IQR]
};

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). `sorted` must be non-empty and ascending.
double quantile_type7(std::span<const double> sorted, double p);

/// Throws EmptyCorpus on an empty column.
FiveNumberSummary five_number_summary(std::string column, std::span<const double> values);

}  // namespace redustat
