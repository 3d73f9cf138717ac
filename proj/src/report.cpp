#include "redustat/report.hpp"

#include <fmt/format.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "redustat/error.hpp"

namespace redustat {
namespace {

using ojson = nlohmann::ordered_json;

std::vector<double> column(const std::vector<MetricsRecord>& rows, double MetricsRecord::*field) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.*field);
  return out;
}

std::vector<double> column(const std::vector<MetricsRecord>& rows,
                           std::optional<double> MetricsRecord::*field) {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back((r.*field).value());
  return out;
}

TestOutcome paired(std::string label, const std::vector<double>& x, const std::vector<double>& y) {
  TestOutcome t;
  t.label = std::move(label);
  t.rows = x.size();
  if (x.size() < 2) {
    t.error = fmt::format("insufficient n ({} rows)", x.size());
    return t;
  }
  try {
    t.result = wilcoxon_signed_rank(x, y);
  } catch (const Error& e) {
    t.error = e.what();
  }
  return t;
}

TestOutcome normality(std::string label, const std::vector<double>& x) {
  TestOutcome t;
  t.label = std::move(label);
  t.rows = x.size();
  try {
    t.result = shapiro_wilk(x);
  } catch (const Error& e) {
    t.error = e.what();
  }
  return t;
}

std::string describe(const StatsResult& r) {
  return fmt::format("V={:g}, p={:.4g}", r.statistic, r.p_value);
}

ClaimVerdict claim_one(const ReportBundle& b) {
  ClaimVerdict c{"claim1", "UNDECIDED", ""};
  if (!b.rate_test.result || !b.mean) {
    c.line = fmt::format("claim1 UNDECIDED: PNTRS vs PTRS not testable ({})", b.rate_test.error);
    return c;
  }
  const auto& r = *b.rate_test.result;
  const bool significant = r.p_value < kSignificance;
  const bool larger = b.mean->pntrs > b.mean->ptrs;
  const std::string ratio =
      b.mean->ptrs > 0 ? fmt::format("; mean PNTRS/PTRS = {:.2f}x", b.mean->pntrs / b.mean->ptrs) : "";
  if (significant && larger) {
    c.status = "PASS";
    c.line = fmt::format(
        "claim1 PASS: NonTreeStmts are reduced in larger numbers than TreeStmts; significant "
        "difference PNTRS vs PTRS ({}){}",
        describe(r), ratio);
  } else if (significant) {
    c.status = "FAIL";
    c.line = fmt::format("claim1 FAIL: significant difference PNTRS vs PTRS ({}) but PTRS is larger",
                         describe(r));
  } else {
    c.status = "FAIL";
    c.line = fmt::format("claim1 FAIL: no significant difference PNTRS vs PTRS ({})", describe(r));
  }
  return c;
}

ClaimVerdict claim_two(const ReportBundle& b) {
  ClaimVerdict c{"claim2", "UNDECIDED", ""};
  if (!b.probability_test.result || !b.mean || !b.mean->prntrs || !b.mean->prtrs) {
    c.line = fmt::format("claim2 UNDECIDED: PrNTRS vs PrTRS not testable ({})",
                         b.probability_test.error);
    return c;
  }
  const auto& r = *b.probability_test.result;
  const bool significant = r.p_value < kSignificance;
  if (significant && *b.mean->prntrs > *b.mean->prtrs) {
    c.status = "PASS";
    c.line = fmt::format(
        "claim2 PASS: NonTreeStmts have a higher removal probability; significant difference "
        "PrNTRS vs PrTRS ({}, {} rows)",
        describe(r), b.probability_test.rows);
  } else if (significant) {
    c.status = "FAIL";
    c.line = fmt::format(
        "claim2 FAIL: significant difference PrNTRS vs PrTRS ({}, {} rows) but PrTRS is higher",
        describe(r), b.probability_test.rows);
  } else {
    c.status = "FAIL";
    c.line = fmt::format("claim2 FAIL: no significant difference PrNTRS vs PrTRS ({}, {} rows)",
                         describe(r), b.probability_test.rows);
  }
  return c;
}

ojson stats_json(const TestOutcome& t) {
  ojson j;
  j["label"] = t.label;
  j["rows"] = t.rows;
  if (t.result) {
    j["method"] = std::string(to_string(t.result->method));
    j["statistic"] = t.result->statistic;
    j["p_value"] = t.result->p_value;
    j["n_used"] = t.result->n_used;
    j["ties_present"] = t.result->ties_present;
    j["zeros_dropped"] = t.result->zeros_dropped;
  } else {
    j["error"] = t.error;
  }
  return j;
}

ojson optional_json(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

}  // namespace

ReportBundle analyze(std::string name, std::vector<MetricsRecord> records) {
  ReportBundle b;
  b.name = std::move(name);
  b.records = std::move(records);
  if (!b.records.empty()) b.mean = aggregate_means(b.records);
  for (const auto& r : b.records) {
    if (r.prntrs && r.prtrs) b.probability_rows.push_back(r);
  }

  b.rate_test = paired("PNTRS vs PTRS", column(b.records, &MetricsRecord::pntrs),
                       column(b.records, &MetricsRecord::ptrs));
  b.probability_test =
      paired("PrNTRS vs PrTRS", column(b.probability_rows, &MetricsRecord::prntrs),
             column(b.probability_rows, &MetricsRecord::prtrs));

  b.normality.push_back(normality("PNTRS", column(b.records, &MetricsRecord::pntrs)));
  b.normality.push_back(normality("PTRS", column(b.records, &MetricsRecord::ptrs)));
  b.normality.push_back(normality("PrNTRS", column(b.probability_rows, &MetricsRecord::prntrs)));
  b.normality.push_back(normality("PrTRS", column(b.probability_rows, &MetricsRecord::prtrs)));

  if (!b.records.empty()) {
    b.boxplots.push_back(five_number_summary("PRS", column(b.records, &MetricsRecord::prs)));
    b.boxplots.push_back(five_number_summary("PNTRS", column(b.records, &MetricsRecord::pntrs)));
    b.boxplots.push_back(five_number_summary("PTRS", column(b.records, &MetricsRecord::ptrs)));
  }
  if (!b.probability_rows.empty()) {
    b.boxplots.push_back(
        five_number_summary("PrNTRS", column(b.probability_rows, &MetricsRecord::prntrs)));
    b.boxplots.push_back(
        five_number_summary("PrTRS", column(b.probability_rows, &MetricsRecord::prtrs)));
  }

  b.claims.push_back(claim_one(b));
  b.claims.push_back(claim_two(b));
  b.provenance.generated_at = utc_timestamp();
  return b;
}

std::string boxplot_csv(const ReportBundle& b) {
  std::string out = "column,n,min,q1,median,q3,max,outliers\n";
  auto pct = [](double v) { return fmt::format("{:.4f}", v * 100.0); };
  for (const auto& s : b.boxplots) {
    std::string outliers;
    for (std::size_t i = 0; i < s.outliers.size(); ++i) {
      if (i) outliers += ';';
      outliers += pct(s.outliers[i]);
    }
    out += fmt::format("{},{},{},{},{},{},{},{}\n", s.column, s.n, pct(s.min), pct(s.q1),
                       pct(s.median), pct(s.q3), pct(s.max), outliers);
  }
  return out;
}

std::string summary_json(const ReportBundle& b) {
  ojson j;
  j["name"] = b.name;
  auto& prov = j["provenance"];
  prov["tool_version"] = b.provenance.tool_version;
  prov["input_hash"] = b.provenance.input_hash;
  prov["generated_at"] = b.provenance.generated_at;
  prov["source"] = b.provenance.source;
  j["records"] = b.records.size();
  j["probability_rows"] = b.probability_rows.size();
  j["probability_rows_excluded"] = b.records.size() - b.probability_rows.size();
  if (b.mean) {
    auto& m = j["mean"];
    m["stmts"] = b.mean->stmts;
    m["ntn"] = b.mean->ntn;
    m["tn"] = b.mean->tn;
    m["ars"] = b.mean->ars;
    m["prs"] = b.mean->prs;
    m["antrs"] = b.mean->antrs;
    m["pntrs"] = b.mean->pntrs;
    m["atrs"] = b.mean->atrs;
    m["ptrs"] = b.mean->ptrs;
    m["prntrs"] = optional_json(b.mean->prntrs);
    m["prtrs"] = optional_json(b.mean->prtrs);
    m["prntrs_excluded"] = b.mean->prntrs_excluded;
    m["prtrs_excluded"] = b.mean->prtrs_excluded;
  } else {
    j["mean"] = nullptr;
  }
  j["wilcoxon"] = ojson::array({stats_json(b.rate_test), stats_json(b.probability_test)});
  auto& sw = j["shapiro_wilk"] = ojson::array();
  for (const auto& t : b.normality) sw.push_back(stats_json(t));
  auto& box = j["boxplots"] = ojson::array();
  for (const auto& s : b.boxplots) {
    ojson js;
    js["column"] = s.column;
    js["n"] = s.n;
    js["min"] = s.min;
    js["q1"] = s.q1;
    js["median"] = s.median;
    js["q3"] = s.q3;
    js["max"] = s.max;
    js["outliers"] = s.outliers;
    box.push_back(std::move(js));
  }
  auto& claims = j["claims"] = ojson::array();
  for (const auto& c : b.claims) claims.push_back({{"id", c.id}, {"status", c.status}, {"line", c.line}});
  auto& entries = j["entries"] = ojson::array();
  for (const auto& e : b.entries) {
    ojson je{{"name", e.name}, {"ok", e.ok}};
    if (!e.ok) je["error"] = e.error;
    entries.push_back(std::move(je));
  }
  j["warnings"] = b.warnings;
  return j.dump(2) + "\n";
}

void write_bundle(const ReportBundle& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "records.csv", to_csv(b.records));
  write_file(dir / "probabilities.csv", to_csv(b.probability_rows));
  write_file(dir / "boxplot.csv", boxplot_csv(b));
  write_file(dir / "summary.json", summary_json(b));
}

std::string summary_text(const ReportBundle& b) {
  std::string out = fmt::format("{}: {} records, {} with both removal probabilities defined\n", b.name,
                                b.records.size(), b.probability_rows.size());
  if (b.mean) {
    const auto& m = *b.mean;
    out += fmt::format(
        "mean: stmts {:.2f}  ntn {:.2f}  tn {:.2f}  ARS {:.2f}  PRS {}%  ANTRS {:.2f}  PNTRS {}%  "
        "ATRS {:.2f}  PTRS {}%\n",
        m.stmts, m.ntn, m.tn, m.ars, format_percent(m.prs), m.antrs, format_percent(m.pntrs), m.atrs,
        format_percent(m.ptrs));
    if (m.prntrs && m.prtrs)
      out += fmt::format("mean: PrNTRS {}% ({} excluded)  PrTRS {}% ({} excluded)\n",
                         format_percent(*m.prntrs), m.prntrs_excluded, format_percent(*m.prtrs),
                         m.prtrs_excluded);
  }
  auto line = [](const TestOutcome& t, const char* kind) {
    if (!t.result) return fmt::format("{} {}: {}\n", kind, t.label, t.error);
    const auto& r = *t.result;
    return fmt::format("{} {}: {}={:.6g} p={:.4g} n={} ({})\n", kind, t.label,
                       r.method == StatsMethod::ShapiroWilk ? "W" : "V", r.statistic, r.p_value,
                       r.n_used, to_string(r.method));
  };
  out += line(b.rate_test, "wilcoxon");
  out += line(b.probability_test, "wilcoxon");
  for (const auto& t : b.normality) out += line(t, "shapiro");
  for (const auto& c : b.claims) out += c.line + "\n";
  for (const auto& w : b.warnings) out += "warning: " + w + "\n";
  return out;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace redustat
