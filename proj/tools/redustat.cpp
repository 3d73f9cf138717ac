// redustat: reduce failing tests and replicate the reduction statistics.
//
// Exit codes: 0 success, 1 entry errors, 2 usage or configuration error.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "redustat/corpus.hpp"
#include "redustat/csv.hpp"
#include "redustat/error.hpp"
#include "redustat/java_parser.hpp"
#include "redustat/metrics.hpp"
#include "redustat/reducer.hpp"
#include "redustat/replication.hpp"
#include "redustat/stats.hpp"
#include "redustat/tree_document.hpp"

namespace fs = std::filesystem;
using namespace redustat;

namespace {

constexpr int kOk = 0;
constexpr int kEntryError = 1;
constexpr int kUsageError = 2;

// Thrown for bad arguments detected after CLI11 parsing.
struct UsageError : Error {
  using Error::Error;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, std::string_view text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

MatchPolicy policy_from(const std::string& s) {
  return s == "any" ? MatchPolicy::AnyFailure : MatchPolicy::SameSignature;
}

struct ReduceArgs {
  std::string test;
  bool tree = false;
  std::string project;
  OracleConfig oracle;
  std::string policy = "same";
  long long timeout_ms = 60'000;
  std::vector<int> fail_codes{1};
  std::string workdir = ".";
  std::string order = "subtrees";
  std::string report;
  std::string output;
};

int cmd_reduce(ReduceArgs& a) {
  std::string text = slurp(a.test);
  TestCaseAst ast;
  try {
    ast = a.tree ? ingest_tree(text)
                 : parse_test(std::move(text), {fs::path(a.test).stem().string(), a.project});
  } catch (const Error& e) {
    throw UsageError(fmt::format("{}: {}", a.test, e.what()));
  }
  if (!a.project.empty()) ast = ast.relabeled(ast.test_name(), a.project);

  a.oracle.match_policy = policy_from(a.policy);
  a.oracle.timeout = std::chrono::milliseconds(a.timeout_ms);
  a.oracle.fail_exit_codes = {a.fail_codes.begin(), a.fail_codes.end()};
  a.oracle.workdir = fs::absolute(a.workdir);
  try {
    a.oracle.validate();
  } catch (const SchemaError& e) {
    throw UsageError(std::string("oracle: ") + e.what());
  }

  ExternalCommandOracle oracle(a.oracle);
  const ReductionOutcome outcome =
      reduce(ast, oracle, a.order == "leaves" ? PassOrder::LeavesFirst : PassOrder::SubtreesFirst);
  const MetricsRecord record = metrics_from_outcome(ast, outcome);

  if (a.output.empty()) {
    std::cout << outcome.minimal_source;
    if (!outcome.minimal_source.empty() && outcome.minimal_source.back() != '\n') std::cout << '\n';
  } else {
    spit(a.output, outcome.minimal_source);
  }
  if (!a.report.empty()) spit(a.report, reduction_report_json(outcome));
  std::cerr << fmt::format("{}: kept {} of {} statements after {} oracle calls in {} passes\n",
                           outcome.test_name, outcome.retained.size(), ast.size(),
                           outcome.oracle_calls, outcome.passes);
  std::cerr << kMetricsCsvHeader << '\n' << csv_row(record) << '\n';
  return kOk;
}

int cmd_corpus(const std::string& config_path, const std::string& out, std::size_t parallelism) {
  CorpusConfig cfg;
  try {
    cfg = load_corpus_config(config_path);
  } catch (const SchemaError& e) {
    throw UsageError(fmt::format("{}: {}", config_path, e.what()));
  } catch (const EmptyCorpus& e) {
    throw UsageError(fmt::format("{}: {}", config_path, e.what()));
  }
  if (!out.empty()) cfg.output_dir = out;
  if (parallelism > 0) cfg.parallelism = parallelism;

  const CorpusRun run = run_corpus(cfg);
  std::cout << summary_text(run.bundle);
  std::cout << fmt::format("bundle written to {}\n", cfg.output_dir.string());
  for (const auto& e : run.bundle.entries)
    if (!e.ok) std::cerr << fmt::format("error: {}: {}\n", e.name, e.error);
  return run.any_errors ? kEntryError : kOk;
}

int cmd_replicate(const std::string& fixture, const std::string& table, const std::string& published,
                  const std::string& out) {
  const auto which = parse_fixture_table(table);
  if (!which) throw UsageError("--table must be I or II");
  const std::string text = slurp(fixture);
  ReportBundle bundle;
  try {
    bundle = replicate_from_fixtures(text, *which);
  } catch (const SchemaError& e) {
    throw UsageError(fmt::format("{}: {}", fixture, e.what()));
  }
  bundle.provenance.source = "fixture:" + fs::path(fixture).filename().string();

  std::string checks = "check,observed,published,low,high,ok\n";
  std::cout << summary_text(bundle);
  for (const auto& c : reference_checks(bundle, *which)) {
    std::cout << fmt::format("reference {}: {:.6g} (published {:g}, accepted [{:g}, {:g}]) {}\n",
                             c.what, c.observed, c.published, c.low, c.high,
                             c.ok ? "ok" : "MISMATCH");
    checks += fmt::format("{},{:.10g},{:g},{:g},{:g},{}\n", c.what, c.observed, c.published, c.low,
                          c.high, c.ok ? "true" : "false");
  }
  if (!published.empty()) {
    const auto cmp = compare_published(bundle, slurp(published));
    std::cout << fmt::format("published table: {} rows, derived {} rows, names {}{}\n",
                             cmp.published_rows, cmp.derived_rows,
                             cmp.names_match ? "match" : "differ",
                             cmp.same_order ? "" : " (order differs)");
    for (const auto& n : cmp.missing) std::cout << "  missing from derived: " << n << '\n';
    for (const auto& n : cmp.unexpected) std::cout << "  not in published: " << n << '\n';
    for (const auto& m : cmp.value_mismatches) std::cout << "  value: " << m << '\n';
  }
  if (!out.empty()) {
    write_bundle(bundle, out);
    spit(fs::path(out) / "reference_checks.csv", checks);
    std::cout << fmt::format("bundle written to {}\n", out);
  }
  return kOk;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(item);
  return out;
}

int cmd_stats(const std::string& csv_path, const std::string& cols, const std::string& test) {
  const CsvTable table = parse_csv(slurp(csv_path));
  const auto names = split_commas(cols);
  if (test == "wilcoxon" && names.size() != 2)
    throw UsageError("--cols needs exactly two columns for wilcoxon");
  if (test == "shapiro" && names.empty()) throw UsageError("--cols needs at least one column");

  std::vector<std::size_t> idx;
  for (const auto& n : names) {
    const auto c = table.column(n);
    if (!c) throw UsageError(fmt::format("{}: no column '{}'", csv_path, n));
    idx.push_back(*c);
  }
  auto print = [](const std::string& label, const StatsResult& r, std::size_t skipped) {
    std::cout << fmt::format("{}: method={} {}={:.10g} p={:.10g} n={} ties={} zeros_dropped={}"
                             " rows_skipped={}\n",
                             label, to_string(r.method),
                             r.method == StatsMethod::ShapiroWilk ? "W" : "V", r.statistic,
                             r.p_value, r.n_used, r.ties_present ? "yes" : "no", r.zeros_dropped,
                             skipped);
  };

  if (test == "wilcoxon") {
    // Pairs with an empty cell on either side are left out.
    std::vector<double> x, y;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const std::string where = "row " + std::to_string(i + 1);
      const auto a = parse_number(table.rows[i][idx[0]], where + ", column " + names[0]);
      const auto b = parse_number(table.rows[i][idx[1]], where + ", column " + names[1]);
      if (!a || !b) {
        ++skipped;
        continue;
      }
      x.push_back(*a);
      y.push_back(*b);
    }
    print(names[0] + " vs " + names[1], wilcoxon_signed_rank(x, y), skipped);
    return kOk;
  }
  for (std::size_t k = 0; k < idx.size(); ++k) {
    std::vector<double> x;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const auto v = parse_number(table.rows[i][idx[k]],
                                  "row " + std::to_string(i + 1) + ", column " + names[k]);
      if (v) {
        x.push_back(*v);
      } else {
        ++skipped;
      }
    }
    print(names[k], shapiro_wilk(x), skipped);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statement-level failing-test reducer and reduction statistics"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ReduceArgs ra;
  auto* reduce_cmd = app.add_subcommand("reduce", "Reduce one failing test with an external oracle");
  reduce_cmd->add_option("test", ra.test, "Test method file (or tree document with --tree)")
      ->required()
      ->check(CLI::ExistingFile);
  reduce_cmd->add_flag("--tree", ra.tree, "Input is a JSON tree document");
  reduce_cmd->add_option("--oracle-cmd", ra.oracle.command_template,
                         "Shell command; {candidate} becomes the candidate file path")
      ->required();
  reduce_cmd->add_option("--policy", ra.policy, "Failure matching: any or same")
      ->check(CLI::IsMember({"any", "same"}))
      ->capture_default_str();
  reduce_cmd->add_option("--timeout", ra.timeout_ms, "Per-run timeout in ms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  reduce_cmd->add_option("--signature", ra.oracle.signature_pattern,
                         "Regex over the oracle output; group 1 is the failure signature");
  reduce_cmd->add_option("--fail-codes", ra.fail_codes, "Exit codes meaning 'test fails'")
      ->delimiter(',')
      ->capture_default_str();
  reduce_cmd->add_option("--workdir", ra.workdir, "Working directory for the command")
      ->check(CLI::ExistingDirectory);
  reduce_cmd->add_option("--candidate-name", ra.oracle.candidate_name,
                         "File name of the candidate")
      ->capture_default_str();
  reduce_cmd->add_option("--retries", ra.oracle.retries, "Re-runs of a non-failing verdict")
      ->check(CLI::NonNegativeNumber);
  reduce_cmd->add_option("--order", ra.order, "subtrees (default) or leaves first")
      ->check(CLI::IsMember({"subtrees", "leaves"}));
  reduce_cmd->add_option("--project", ra.project, "Project label for the metrics row");
  reduce_cmd->add_option("--report", ra.report, "Write the reduction report JSON here");
  reduce_cmd->add_option("-o,--output", ra.output, "Write the minimal test here instead of stdout");

  std::string config, corpus_out;
  std::size_t parallelism = 0;
  auto* corpus_cmd = app.add_subcommand("corpus", "Reduce every entry of a corpus config");
  corpus_cmd->add_option("config", config, "Corpus config JSON")->required()->check(CLI::ExistingFile);
  corpus_cmd->add_option("--out", corpus_out, "Override output_dir");
  corpus_cmd->add_option("-j,--parallelism", parallelism, "Override parallelism")
      ->check(CLI::PositiveNumber);

  std::string fixture, table, published, rep_out;
  auto* rep_cmd = app.add_subcommand("replicate", "Analyze a published metrics table fixture");
  rep_cmd->add_option("--fixture", fixture, "Metrics CSV")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--table", table, "I (mutants) or II (Defects4J)")
      ->required()
      ->check(CLI::IsMember({"I", "II", "1", "2"}));
  rep_cmd->add_option("--published", published, "Published probability table to compare with")
      ->check(CLI::ExistingFile);
  rep_cmd->add_option("--out", rep_out, "Write the bundle to this directory");

  std::string csv, cols, test;
  auto* stats_cmd = app.add_subcommand("stats", "Run one test on columns of a CSV");
  stats_cmd->add_option("--csv", csv, "Input CSV")->required()->check(CLI::ExistingFile);
  stats_cmd->add_option("--cols", cols, "Comma-separated column names")->required();
  stats_cmd->add_option("--test", test, "wilcoxon or shapiro")
      ->required()
      ->check(CLI::IsMember({"wilcoxon", "shapiro"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*reduce_cmd) return cmd_reduce(ra);
    if (*corpus_cmd) return cmd_corpus(config, corpus_out, parallelism);
    if (*rep_cmd) return cmd_replicate(fixture, table, published, rep_out);
    return cmd_stats(csv, cols, test);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEntryError;
  }
}
