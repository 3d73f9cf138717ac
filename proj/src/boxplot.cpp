#include "redustat/boxplot.hpp"

#include <algorithm>
#include <cmath>

#include "redustat/error.hpp"

namespace redustat {

double quantile_type7(std::span<const double> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

FiveNumberSummary five_number_summary(std::string column, std::span<const double> values) {
  if (values.empty()) throw EmptyCorpus();
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  FiveNumberSummary s;
  s.column = std::move(column);
  s.n = v.size();
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile_type7(v, 0.25);
  s.median = quantile_type7(v, 0.5);
  s.q3 = quantile_type7(v, 0.75);
  const double fence = 1.5 * (s.q3 - s.q1);
  for (double x : v) {
    if (x < s.q1 - fence || x > s.q3 + fence) s.outliers.push_back(x);
  }
  return s;
}

}  // namespace redustat
