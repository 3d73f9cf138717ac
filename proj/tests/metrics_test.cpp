#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "redustat/error.hpp"
#include "redustat/metrics.hpp"

using namespace redustat;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kFixtures = std::string(REDUSTAT_SOURCE_DIR) + "/data/fixtures/";

// Plain split, independent of the library's CSV reader.
std::vector<std::vector<std::string>> rows_of(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Metrics, AllNonTreeExample) {
  const auto r = compute_metrics({13, 13, 0}, {7, 0});
  EXPECT_EQ(r.ars, 7u);
  EXPECT_NEAR(r.prs * 100, 53.84, 0.01);
  EXPECT_DOUBLE_EQ(r.pntrs, r.prs);
  EXPECT_DOUBLE_EQ(r.ptrs, 0.0);
  EXPECT_FALSE(r.prtrs.has_value());
  ASSERT_TRUE(r.prntrs.has_value());
  EXPECT_DOUBLE_EQ(*r.prntrs, 7.0 / 13.0);
}

TEST(Metrics, MixedExample) {
  const auto r = compute_metrics({31, 29, 2}, {25, 2});
  EXPECT_EQ(r.ars, 27u);
  EXPECT_NEAR(r.prs * 100, 87.09, 0.01);
  EXPECT_NEAR(r.pntrs * 100, 80.64, 0.01);
  EXPECT_NEAR(r.ptrs * 100, 6.45, 0.01);
  EXPECT_NEAR(*r.prntrs * 100, 86.20, 0.01);
  EXPECT_DOUBLE_EQ(*r.prtrs, 1.0);
  EXPECT_DOUBLE_EQ(r.pntrs + r.ptrs, r.prs);
}

TEST(Metrics, CountMismatch) {
  EXPECT_THROW(compute_metrics({10, 8, 1}, {0, 0}), CountMismatch);
  EXPECT_THROW(compute_metrics({3, 2, 1}, {3, 0}), CountMismatch);
  EXPECT_THROW(compute_metrics({3, 2, 1}, {0, 2}), CountMismatch);
}

TEST(Metrics, EmptyTestHasZeroRates) {
  const auto r = compute_metrics({0, 0, 0}, {0, 0});
  EXPECT_DOUBLE_EQ(r.prs, 0.0);
  EXPECT_FALSE(r.prntrs);
  EXPECT_FALSE(r.prtrs);
}

TEST(Metrics, RatesAreAdditiveOnRandomCounts) {
  std::mt19937 rng(17);
  for (int i = 0; i < 500; ++i) {
    const std::size_t ntn = rng() % 40, tn = rng() % 10;
    const std::size_t antrs = ntn ? rng() % (ntn + 1) : 0, atrs = tn ? rng() % (tn + 1) : 0;
    const auto r = compute_metrics({ntn + tn, ntn, tn}, {antrs, atrs});
    EXPECT_NEAR(r.prs, r.pntrs + r.ptrs, 1e-12);
    EXPECT_GE(r.prs, 0.0);
    EXPECT_LE(r.prs, 1.0);
    EXPECT_EQ(r.prntrs.has_value(), ntn > 0);
    EXPECT_EQ(r.prtrs.has_value(), tn > 0);
  }
}

TEST(Means, LinearInTheRecords) {
  std::vector<MetricsRecord> a{compute_metrics({4, 3, 1}, {2, 1}), compute_metrics({6, 6, 0}, {3, 0})};
  auto doubled = a;
  doubled.insert(doubled.end(), a.begin(), a.end());
  const auto m1 = aggregate_means(a), m2 = aggregate_means(doubled);
  EXPECT_DOUBLE_EQ(m1.prs, m2.prs);
  EXPECT_DOUBLE_EQ(m1.stmts, 5.0);
  EXPECT_DOUBLE_EQ(m1.prs, (0.75 + 0.5) / 2);
  EXPECT_DOUBLE_EQ(*m1.prtrs, 1.0);
  EXPECT_EQ(m1.prtrs_excluded, 1u);
  EXPECT_EQ(m1.prntrs_excluded, 0u);
  EXPECT_THROW(aggregate_means(std::vector<MetricsRecord>{}), EmptyCorpus);
}

TEST(Means, FixtureColumnsMatchAPlainComputation) {
  for (const char* file : {"table1_mutants.csv", "table2_defects4j.csv"}) {
    const std::string text = slurp(kFixtures + file);
    const auto records = parse_metrics_csv(text);
    const auto rows = rows_of(text);
    ASSERT_EQ(records.size(), rows.size());
    double sum[9] = {};
    for (const auto& row : rows)
      for (int c = 0; c < 9; ++c) sum[c] += std::stod(row[static_cast<std::size_t>(c) + 2]);
    const auto m = aggregate_means(records);
    const double n = static_cast<double>(rows.size());
    const double got[9] = {m.stmts, m.ntn,         m.tn,          m.ars,  m.prs * 100,
                           m.antrs, m.pntrs * 100, m.atrs,        m.ptrs * 100};
    for (int c = 0; c < 9; ++c) EXPECT_NEAR(got[c], sum[c] / n, 1e-9) << file << " column " << c;
  }
}

TEST(Means, UndefinedProbabilitiesAreCounted) {
  // 30 rows each. Mutants: 8 have no TreeStmt; Defects4J: 16.
  for (auto [file, excluded] : {std::pair{"table1_mutants.csv", 8u}, std::pair{"table2_defects4j.csv", 16u}}) {
    auto records = parse_metrics_csv(slurp(kFixtures + file));
    for (auto& r : records) derive_probabilities(r);
    const auto m = aggregate_means(records);
    EXPECT_EQ(m.records, 30u);
    EXPECT_EQ(m.prtrs_excluded, excluded) << file;
    EXPECT_EQ(m.prntrs_excluded, 0u) << file;
  }
}

TEST(Format, PercentRoundsHalfUp) {
  EXPECT_EQ(format_percent(7.0 / 13.0), "53.85");
  EXPECT_EQ(format_percent(0.0), "0.00");
  EXPECT_EQ(format_percent(1.0), "100.00");
  EXPECT_EQ(format_percent(0.00125), "0.13");
  EXPECT_EQ(format_percent(0.123449), "12.34");
  EXPECT_EQ(format_percent(2.0 / 3.0), "66.67");
}

TEST(Csv, HeaderAndEmptyCells) {
  const std::vector<MetricsRecord> rs{compute_metrics({13, 13, 0}, {7, 0}, "t", "p")};
  EXPECT_EQ(to_csv(rs), std::string(kMetricsCsvHeader) + "\nt,p,13,13,0,7,53.85,7,53.85,0,0.00,53.85,\n");
}

TEST(Csv, RoundTripIsStable) {
  std::mt19937 rng(29);
  std::vector<MetricsRecord> rs;
  for (int i = 0; i < 50; ++i) {
    const std::size_t ntn = rng() % 30, tn = rng() % 6;
    rs.push_back(compute_metrics({ntn + tn, ntn, tn}, {ntn ? rng() % (ntn + 1) : 0, tn ? rng() % (tn + 1) : 0},
                                 "test" + std::to_string(i), "proj"));
  }
  const std::string once = to_csv(rs);
  const auto back = parse_metrics_csv(once);
  ASSERT_EQ(back.size(), rs.size());
  EXPECT_EQ(to_csv(back), once);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    EXPECT_EQ(back[i].ars, rs[i].ars);
    EXPECT_NEAR(back[i].prs, rs[i].prs, 5e-5);
  }
}

TEST(Csv, SchemaErrors) {
  EXPECT_THROW(parse_metrics_csv("test,project\nx,y\n"), SchemaError);
  EXPECT_THROW(parse_metrics_csv(std::string(kMetricsCsvHeader) + "\nt,p,1.5,1,0,0,0,0,0,0,0,,\n"), SchemaError);
  EXPECT_THROW(parse_metrics_csv(std::string(kMetricsCsvHeader) + "\nt,p,1,1,0,0,,0,0,0,0,,\n"), SchemaError);
}

TEST(Consistency, FlagsRowsThatDisagree) {
  MetricsRecord r = compute_metrics({10, 8, 2}, {3, 1});
  EXPECT_TRUE(consistency_issues(r).empty());
  r.tn = 1;
  EXPECT_FALSE(consistency_issues(r).empty());
}
