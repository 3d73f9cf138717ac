#include "redustat/metrics.hpp"

#include <fmt/format.h>

#include <cmath>

#include "redustat/csv.hpp"
#include "redustat/error.hpp"

namespace redustat {
namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::size_t parse_count(const std::string& cell, const std::string& where) {
  const auto v = parse_number(cell, where);
  if (!v || *v < 0 || std::floor(*v) != *v) throw SchemaError(where, "expected a non-negative count");
  return static_cast<std::size_t>(*v);
}

double parse_rate(const std::string& cell, const std::string& where) {
  const auto v = parse_number(cell, where);
  if (!v) throw SchemaError(where, "missing value");
  return *v / 100.0;
}

std::optional<double> parse_optional_rate(const std::string& cell, const std::string& where) {
  const auto v = parse_number(cell, where);
  if (!v) return std::nullopt;
  return *v / 100.0;
}

}  // namespace

MetricsRecord compute_metrics(const CategoryCounts& counts, const RemovalCounts& removal,
                              std::string test_name, std::string project) {
  if (counts.stmts != counts.ntn + counts.tn)
    throw CountMismatch(fmt::format("stmts {} != ntn {} + tn {}", counts.stmts, counts.ntn, counts.tn));
  if (removal.antrs > counts.ntn)
    throw CountMismatch(fmt::format("removed NonTreeStmts {} exceed {}", removal.antrs, counts.ntn));
  if (removal.atrs > counts.tn)
    throw CountMismatch(fmt::format("removed TreeStmts {} exceed {}", removal.atrs, counts.tn));

  MetricsRecord r;
  r.test_name = std::move(test_name);
  r.project = std::move(project);
  r.stmts = counts.stmts;
  r.ntn = counts.ntn;
  r.tn = counts.tn;
  r.antrs = removal.antrs;
  r.atrs = removal.atrs;
  r.ars = removal.antrs + removal.atrs;
  r.prs = ratio(r.ars, r.stmts);
  r.pntrs = ratio(r.antrs, r.stmts);
  r.ptrs = ratio(r.atrs, r.stmts);
  derive_probabilities(r);
  return r;
}

MetricsRecord metrics_from_outcome(const TestCaseAst& ast, const ReductionOutcome& outcome) {
  const CategoryCounts removed = count_categories(ast, outcome.removed);
  return compute_metrics(count_categories(ast), {removed.ntn, removed.tn}, outcome.test_name,
                         outcome.project);
}

void derive_probabilities(MetricsRecord& r) {
  r.prntrs = r.ntn > 0 ? std::optional(ratio(r.antrs, r.ntn)) : std::nullopt;
  r.prtrs = r.tn > 0 ? std::optional(ratio(r.atrs, r.tn)) : std::nullopt;
}

MeanRecord aggregate_means(std::span<const MetricsRecord> records) {
  if (records.empty()) throw EmptyCorpus();
  MeanRecord m;
  m.records = records.size();
  double prntrs = 0, prtrs = 0;
  std::size_t prntrs_n = 0, prtrs_n = 0;
  for (const auto& r : records) {
    m.stmts += static_cast<double>(r.stmts);
    m.ntn += static_cast<double>(r.ntn);
    m.tn += static_cast<double>(r.tn);
    m.ars += static_cast<double>(r.ars);
    m.prs += r.prs;
    m.antrs += static_cast<double>(r.antrs);
    m.pntrs += r.pntrs;
    m.atrs += static_cast<double>(r.atrs);
    m.ptrs += r.ptrs;
    if (r.prntrs) {
      prntrs += *r.prntrs;
      ++prntrs_n;
    }
    if (r.prtrs) {
      prtrs += *r.prtrs;
      ++prtrs_n;
    }
  }
  const double n = static_cast<double>(records.size());
  for (double* col : {&m.stmts, &m.ntn, &m.tn, &m.ars, &m.prs, &m.antrs, &m.pntrs, &m.atrs, &m.ptrs})
    *col /= n;
  if (prntrs_n > 0) m.prntrs = prntrs / static_cast<double>(prntrs_n);
  if (prtrs_n > 0) m.prtrs = prtrs / static_cast<double>(prtrs_n);
  m.prntrs_excluded = records.size() - prntrs_n;
  m.prtrs_excluded = records.size() - prtrs_n;
  return m;
}

std::string format_percent(double fraction) {
  // Epsilon absorbs binary representation error so decimal halves round up.
  const auto hundredths = static_cast<long long>(std::floor(fraction * 10000.0 + 0.5 + 1e-7));
  const char* sign = hundredths < 0 ? "-" : "";
  const long long a = std::llabs(hundredths);
  return fmt::format("{}{}.{:02}", sign, a / 100, a % 100);
}

std::string csv_row(const MetricsRecord& r) {
  auto opt = [](const std::optional<double>& v) { return v ? format_percent(*v) : std::string(); };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", r.test_name, r.project, r.stmts, r.ntn,
                     r.tn, r.ars, format_percent(r.prs), r.antrs, format_percent(r.pntrs), r.atrs,
                     format_percent(r.ptrs), opt(r.prntrs), opt(r.prtrs));
}

std::string to_csv(std::span<const MetricsRecord> records) {
  std::string out(kMetricsCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRecord> parse_metrics_csv(std::string_view text) {
  const CsvTable table = parse_csv(text);
  const std::vector<std::string> expected = [] {
    std::vector<std::string> cols;
    std::string_view h = kMetricsCsvHeader;
    for (std::size_t start = 0;;) {
      const auto comma = h.find(',', start);
      cols.emplace_back(h.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return cols;
  }();
  if (table.header != expected)
    throw SchemaError("line 1", "expected header '" + std::string(kMetricsCsvHeader) + "'");

  std::vector<MetricsRecord> out;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    auto where = [&](std::size_t col) {
      return "row " + std::to_string(i + 1) + ", column " + expected[col];
    };
    MetricsRecord r;
    r.test_name = row[0];
    if (r.test_name.empty()) throw SchemaError(where(0), "missing test name");
    r.project = row[1];
    r.stmts = parse_count(row[2], where(2));
    r.ntn = parse_count(row[3], where(3));
    r.tn = parse_count(row[4], where(4));
    r.ars = parse_count(row[5], where(5));
    r.prs = parse_rate(row[6], where(6));
    r.antrs = parse_count(row[7], where(7));
    r.pntrs = parse_rate(row[8], where(8));
    r.atrs = parse_count(row[9], where(9));
    r.ptrs = parse_rate(row[10], where(10));
    r.prntrs = parse_optional_rate(row[11], where(11));
    r.prtrs = parse_optional_rate(row[12], where(12));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> consistency_issues(const MetricsRecord& r) {
  // Published tables truncate as often as they round; allow one unit in the
  // second decimal of a percentage.
  constexpr double kTol = 1.1e-4;
  std::vector<std::string> issues;
  if (r.stmts != r.ntn + r.tn)
    issues.push_back(fmt::format("stmts {} != ntn {} + tn {}", r.stmts, r.ntn, r.tn));
  if (r.ars != r.antrs + r.atrs)
    issues.push_back(fmt::format("ars {} != antrs {} + atrs {}", r.ars, r.antrs, r.atrs));
  if (r.antrs > r.ntn) issues.push_back(fmt::format("antrs {} > ntn {}", r.antrs, r.ntn));
  if (r.atrs > r.tn) issues.push_back(fmt::format("atrs {} > tn {}", r.atrs, r.tn));
  auto check = [&](const char* name, double stored, std::size_t num) {
    const double expect = ratio(num, r.stmts);
    if (std::abs(stored - expect) > kTol)
      issues.push_back(fmt::format("{} {}% != {}%", name, format_percent(stored), format_percent(expect)));
  };
  check("prs", r.prs, r.ars);
  check("pntrs", r.pntrs, r.antrs);
  check("ptrs", r.ptrs, r.atrs);
  return issues;
}

}  // namespace redustat
