#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "redustat/report.hpp"

namespace redustat {

enum class FixtureTable : std::uint8_t { MutantsTableI, DefectsTableII };

/// "I" / "II" (also accepts "1" / "2").
std::optional<FixtureTable> parse_fixture_table(std::string_view text) noexcept;

/// Published numbers for one corpus. Means are in table units: counts, and
/// rates in percent.
struct PublishedReference {
  // stmts, ntn, tn, ars, prs, antrs, pntrs, atrs, ptrs
  std::array<double, 9> means{};
  double rate_v = 0, rate_p = 0;
  double probability_v = 0, probability_p = 0;
  std::size_t probability_rows = 0;
};

const PublishedReference& published_reference(FixtureTable which) noexcept;

/// Loads a Table I/II style metrics CSV, re-derives the removal
/// probabilities from the counts and runs the full analysis. Rows whose
/// columns disagree are kept as printed and listed in bundle.warnings.
/// Throws SchemaError.
ReportBundle replicate_from_fixtures(std::string_view csv_text, FixtureTable which);

struct ReferenceCheck {
  std::string what;
  double observed = 0;
  double published = 0;
  double low = 0, high = 0;  // accepted window
  bool ok = false;
};

/// Compares a replicated bundle with the published reference: means within
/// 0.1, V exactly, p inside a window absorbing the fixture rounding.
std::vector<ReferenceCheck> reference_checks(const ReportBundle& bundle, FixtureTable which);

/// Row-by-row comparison with a published probability table
/// (test,prntrs,prtrs in percent).
struct PublishedComparison {
  std::size_t published_rows = 0;
  std::size_t derived_rows = 0;
  bool names_match = false;  // one derived row per published row, same names
  bool same_order = false;
  std::vector<std::string> missing;     // published but not derived
  std::vector<std::string> unexpected;  // derived but not published
  std::vector<std::string> value_mismatches;
};

PublishedComparison compare_published(const ReportBundle& bundle, std::string_view published_csv);

}  // namespace redustat
