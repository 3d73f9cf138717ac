#include "redustat/replication.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "redustat/csv.hpp"
#include "redustat/error.hpp"

namespace redustat {
namespace {

const PublishedReference kMutants{
    {20.9, 18.86, 2.03, 12.46, 53.21, 11.2, 47.64, 1.23, 5.38}, 435, 2.699e-06, 109.5, 0.5731, 22};

const PublishedReference kDefects{
    {20.16, 18.06, 2.13, 15.5, 69.42, 13.73, 62.37, 1.76, 7.04}, 465, 1.808e-06, 42, 0.5426, 14};

constexpr std::array<const char*, 9> kMeanNames{"stmts", "ntn", "tn",    "ars", "prs",
                                                "antrs", "pntrs", "atrs", "ptrs"};

// Published values carry two decimals, either rounded or truncated.
constexpr double kCellTolerance = 0.011;

std::string label(FixtureTable which) {
  return which == FixtureTable::MutantsTableI ? "mutants (Table I)" : "defects4j (Table II)";
}

}  // namespace

std::optional<FixtureTable> parse_fixture_table(std::string_view text) noexcept {
  if (text == "I" || text == "1") return FixtureTable::MutantsTableI;
  if (text == "II" || text == "2") return FixtureTable::DefectsTableII;
  return std::nullopt;
}

const PublishedReference& published_reference(FixtureTable which) noexcept {
  return which == FixtureTable::MutantsTableI ? kMutants : kDefects;
}

ReportBundle replicate_from_fixtures(std::string_view csv_text, FixtureTable which) {
  std::vector<MetricsRecord> records = parse_metrics_csv(csv_text);
  std::vector<std::string> warnings;
  for (auto& r : records) {
    for (const auto& issue : consistency_issues(r))
      warnings.push_back(fmt::format("{}: {}", r.test_name, issue));
    derive_probabilities(r);
  }
  ReportBundle b = analyze(label(which), std::move(records));
  b.warnings = std::move(warnings);
  b.provenance.input_hash = fnv1a_hex(csv_text);
  return b;
}

std::vector<ReferenceCheck> reference_checks(const ReportBundle& bundle, FixtureTable which) {
  const PublishedReference& ref = published_reference(which);
  std::vector<ReferenceCheck> out;
  auto window = [&](std::string what, double observed, double published, double low, double high) {
    out.push_back({std::move(what), observed, published, low, high, observed >= low && observed <= high});
  };
  auto add = [&](std::string what, double observed, double published, double tol) {
    window(std::move(what), observed, published, published - tol, published + tol);
  };
  auto missing = [&](std::string what, double published) {
    out.push_back({std::move(what), std::nan(""), published, published, published, false});
  };

  if (bundle.mean) {
    const MeanRecord& m = *bundle.mean;
    const std::array<double, 9> observed{m.stmts, m.ntn,         m.tn,   m.ars,       m.prs * 100,
                                         m.antrs, m.pntrs * 100, m.atrs, m.ptrs * 100};
    for (std::size_t i = 0; i < observed.size(); ++i)
      add(fmt::format("mean {}", kMeanNames[i]), observed[i], ref.means[i], 0.1);
  } else {
    missing("mean", 0);
  }

  const bool mutants = which == FixtureTable::MutantsTableI;
  if (const auto& r = bundle.rate_test.result) {
    add("PNTRS vs PTRS V", r->statistic, ref.rate_v, 0);
    window("PNTRS vs PTRS p", r->p_value, ref.rate_p, mutants ? 2.4e-06 : 1.6e-06,
           mutants ? 3.0e-06 : 2.0e-06);
  } else {
    missing("PNTRS vs PTRS V", ref.rate_v);
  }
  add("PrNTRS/PrTRS rows", static_cast<double>(bundle.probability_rows.size()),
      static_cast<double>(ref.probability_rows), 0);
  if (const auto& r = bundle.probability_test.result) {
    add("PrNTRS vs PrTRS V", r->statistic, ref.probability_v, 0);
    add("PrNTRS vs PrTRS p", r->p_value, ref.probability_p, 0.02);
  } else {
    missing("PrNTRS vs PrTRS V", ref.probability_v);
  }
  return out;
}

PublishedComparison compare_published(const ReportBundle& bundle, std::string_view published_csv) {
  const CsvTable table = parse_csv(published_csv);
  const auto name_col = table.column("test");
  const auto prntrs_col = table.column("prntrs");
  const auto prtrs_col = table.column("prtrs");
  if (!name_col || !prntrs_col || !prtrs_col)
    throw SchemaError("line 1", "expected columns test, prntrs, prtrs");

  PublishedComparison c;
  c.published_rows = table.rows.size();
  c.derived_rows = bundle.probability_rows.size();

  std::vector<std::string> published_names;
  std::set<std::string> published_set, derived_set;
  for (const auto& row : table.rows) {
    published_names.push_back(row[*name_col]);
    published_set.insert(row[*name_col]);
  }
  std::vector<std::string> derived_names;
  for (const auto& r : bundle.probability_rows) {
    derived_names.push_back(r.test_name);
    derived_set.insert(r.test_name);
  }
  c.same_order = published_names == derived_names;
  for (const auto& n : published_names)
    if (!derived_set.count(n)) c.missing.push_back(n);
  for (const auto& n : derived_names)
    if (!published_set.count(n)) c.unexpected.push_back(n);
  c.names_match = c.missing.empty() && c.unexpected.empty() && c.published_rows == c.derived_rows;

  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    const std::string& name = row[*name_col];
    auto it = std::find_if(bundle.probability_rows.begin(), bundle.probability_rows.end(),
                           [&](const MetricsRecord& r) { return r.test_name == name; });
    if (it == bundle.probability_rows.end()) continue;
    const std::string where = "row " + std::to_string(i + 1);
    auto check = [&](const char* col, std::size_t idx, double derived) {
      const auto published = parse_number(row[idx], where + ", column " + col);
      if (!published) {
        c.value_mismatches.push_back(fmt::format("{} {}: published cell empty", name, col));
      } else if (std::abs(*published - derived * 100) > kCellTolerance) {
        c.value_mismatches.push_back(fmt::format("{} {}: published {}%, derived {}%", name, col,
                                                 row[idx], format_percent(derived)));
      }
    };
    check("prntrs", *prntrs_col, *it->prntrs);
    check("prtrs", *prtrs_col, *it->prtrs);
  }
  return c;
}

}  // namespace redustat
