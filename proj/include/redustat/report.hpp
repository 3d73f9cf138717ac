#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redustat/boxplot.hpp"
#include "redustat/metrics.hpp"
#include "redustat/stats.hpp"

namespace redustat {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// A hypothesis test that may not have been computable (too few rows,
/// constant column, ...); `error` then says why.
struct TestOutcome {
  std::string label;
  std::size_t rows = 0;
  std::optional<StatsResult> result;
  std::string error;
};

struct ClaimVerdict {
  std::string id;   // "claim1", "claim2"
  std::string status;  // PASS, FAIL or UNDECIDED
  std::string line;    // one human-readable line
};

struct EntryStatus {
  std::string name;
  bool ok = true;
  std::string error;
};

struct Provenance {
  std::string tool_version{kToolVersion};
  std::string input_hash;   // FNV-1a of the config or fixture text
  std::string generated_at;  // UTC, ISO 8601
  std::string source;        // "corpus:<name>" or "fixture:<path>"
};

struct ReportBundle {
  std::string name;
  std::vector<MetricsRecord> records;
  std::optional<MeanRecord> mean;
  // Rows with both removal probabilities defined, in record order.
  std::vector<MetricsRecord> probability_rows;
  std::vector<TestOutcome> normality;  // PNTRS, PTRS, PrNTRS, PrTRS
  TestOutcome rate_test;               // PNTRS vs PTRS, all rows
  TestOutcome probability_test;        // PrNTRS vs PrTRS, probability rows
  std::vector<FiveNumberSummary> boxplots;
  std::vector<ClaimVerdict> claims;
  std::vector<EntryStatus> entries;
  std::vector<std::string> warnings;
  Provenance provenance;
};

inline constexpr double kSignificance = 0.05;

/// Everything derivable from `records`: means, both paired tests, the four
/// normality checks, boxplot summaries and claim verdicts.
ReportBundle analyze(std::string name, std::vector<MetricsRecord> records);

/// Writes records.csv, probabilities.csv, boxplot.csv and summary.json.
void write_bundle(const ReportBundle& bundle, const std::filesystem::path& dir);

std::string summary_json(const ReportBundle& bundle);
std::string boxplot_csv(const ReportBundle& bundle);

/// Multi-line text summary for terminals.
std::string summary_text(const ReportBundle& bundle);

std::string fnv1a_hex(std::string_view data);
std::string utc_timestamp();

}  // namespace redustat
