#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "redustat/reducer.hpp"
#include "redustat/stmt_model.hpp"

namespace redustat {

/// One row of a reduction table. Rates are fractions in [0, 1]; the three
/// percentage-of-test rates share the denominator `stmts`, the two removal
/// probabilities use their category size and are absent when it is zero.
struct MetricsRecord {
  std::string test_name;
  std::string project;
  std::size_t stmts = 0;
  std::size_t ntn = 0;
  std::size_t tn = 0;
  std::size_t ars = 0;
  double prs = 0.0;
  std::size_t antrs = 0;
  double pntrs = 0.0;
  std::size_t atrs = 0;
  double ptrs = 0.0;
  std::optional<double> prntrs;
  std::optional<double> prtrs;

  bool operator==(const MetricsRecord&) const = default;
};

struct RemovalCounts {
  std::size_t antrs = 0;
  std::size_t atrs = 0;
};

/// Throws CountMismatch unless stmts == ntn + tn, antrs <= ntn, atrs <= tn.
MetricsRecord compute_metrics(const CategoryCounts& counts, const RemovalCounts& removal,
                              std::string test_name = {}, std::string project = {});

MetricsRecord metrics_from_outcome(const TestCaseAst& ast, const ReductionOutcome& outcome);

/// Recomputes the two removal probabilities from the counts.
void derive_probabilities(MetricsRecord& record);

/// Column means. The probability means cover only rows where the value is
/// defined; the number of rows left out is reported alongside.
struct MeanRecord {
  std::size_t records = 0;
  double stmts = 0, ntn = 0, tn = 0;
  double ars = 0, prs = 0;
  double antrs = 0, pntrs = 0;
  double atrs = 0, ptrs = 0;
  std::optional<double> prntrs;
  std::optional<double> prtrs;
  std::size_t prntrs_excluded = 0;
  std::size_t prtrs_excluded = 0;
};

/// Throws EmptyCorpus.
MeanRecord aggregate_means(std::span<const MetricsRecord> records);

/// Fraction as a percentage with two decimals, rounding half up.
std::string format_percent(double fraction);

inline constexpr std::string_view kMetricsCsvHeader =
    "test,project,stmts,ntn,tn,ars,prs,antrs,pntrs,atrs,ptrs,prntrs,prtrs";

/// CSV with the fixed column order above. Rates are written as percentages
/// with two decimals; undefined probabilities are empty cells.
std::string to_csv(std::span<const MetricsRecord> records);
std::string csv_row(const MetricsRecord& record);

/// Parses the metrics CSV (percent-valued rate columns). Values are taken as
/// written; no cross-column checks. Throws SchemaError.
std::vector<MetricsRecord> parse_metrics_csv(std::string_view text);

/// Cross-column inconsistencies of a row (e.g. stmts != ntn + tn), one
/// message per problem.
std::vector<std::string> consistency_issues(const MetricsRecord& record);

}  // namespace redustat
