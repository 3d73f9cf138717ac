#include "redustat/corpus.hpp"

#include <fmt/format.h>

#include <atomic>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>
#include <thread>

#include "redustat/error.hpp"
#include "redustat/java_parser.hpp"
#include "redustat/metrics.hpp"
#include "redustat/tree_document.hpp"

namespace redustat {
namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const json& require(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
  return *it;
}

std::string get_string(const json& obj, const char* key, const std::string& path) {
  const json& v = require(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

std::string opt_string(const json& obj, const char* key, const std::string& path,
                       std::string fallback = {}) {
  if (!obj.contains(key)) return fallback;
  return get_string(obj, key, path);
}

long long get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw SchemaError(path, "expected an integer");
  return v.get<long long>();
}

IdSet id_set(const json& v, const std::string& path) {
  if (!v.is_array()) throw SchemaError(path, "expected an array of statement ids");
  IdSet out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const long long id = get_int(v[i], path + "/" + std::to_string(i));
    if (id < 0) throw SchemaError(path + "/" + std::to_string(i), "negative statement id");
    out.insert(static_cast<StmtId>(id));
  }
  return out;
}

MatchPolicy parse_policy(const std::string& text, const std::string& path) {
  if (text == "any") return MatchPolicy::AnyFailure;
  if (text == "same") return MatchPolicy::SameSignature;
  throw SchemaError(path, "expected \"any\" or \"same\"");
}

OracleSpec parse_oracle(const json& o, const std::string& path, const fs::path& base,
                        MatchPolicy default_policy) {
  if (!o.is_object()) throw SchemaError(path, "expected an object");
  OracleSpec spec;
  const std::string mode = get_string(o, "mode", path);
  if (mode == "scripted") {
    spec.mode = OracleMode::Scripted;
    const json& sets = require(o, "failure_sets", path);
    if (!sets.is_array() || sets.empty())
      throw SchemaError(path + "/failure_sets", "expected a non-empty array");
    for (std::size_t i = 0; i < sets.size(); ++i)
      spec.failure_sets.push_back(id_set(sets[i], path + "/failure_sets/" + std::to_string(i)));
    if (o.contains("blockers")) spec.blockers = id_set(o["blockers"], path + "/blockers");
    return spec;
  }
  if (mode != "external") throw SchemaError(path + "/mode", "expected \"scripted\" or \"external\"");

  spec.mode = OracleMode::External;
  OracleConfig& c = spec.external;
  c.command_template = get_string(o, "command", path);
  const fs::path workdir = opt_string(o, "workdir", path, ".");
  c.workdir = workdir.is_absolute() ? workdir : base / workdir;
  if (o.contains("timeout_ms"))
    c.timeout = std::chrono::milliseconds(get_int(o["timeout_ms"], path + "/timeout_ms"));
  if (o.contains("fail_exit_codes")) {
    const json& codes = o["fail_exit_codes"];
    if (!codes.is_array()) throw SchemaError(path + "/fail_exit_codes", "expected an array");
    c.fail_exit_codes.clear();
    for (std::size_t i = 0; i < codes.size(); ++i)
      c.fail_exit_codes.insert(
          static_cast<int>(get_int(codes[i], path + "/fail_exit_codes/" + std::to_string(i))));
  }
  c.signature_pattern = opt_string(o, "signature_pattern", path);
  c.match_policy = o.contains("policy") ? parse_policy(get_string(o, "policy", path), path + "/policy")
                                        : default_policy;
  c.candidate_name = opt_string(o, "candidate_name", path, c.candidate_name);
  if (o.contains("retries")) c.retries = static_cast<int>(get_int(o["retries"], path + "/retries"));
  try {
    c.validate();
  } catch (const SchemaError& e) {
    const std::string msg = e.what();
    throw SchemaError(path + "/" + e.path(), msg.substr(e.path().size() + 2));
  }
  return spec;
}

std::unique_ptr<Oracle> make_oracle(const OracleSpec& spec) {
  if (spec.mode == OracleMode::Scripted)
    return std::make_unique<ScriptedOracle>(spec.failure_sets, spec.blockers);
  return std::make_unique<ExternalCommandOracle>(spec.external);
}

struct EntryResult {
  std::optional<ReductionOutcome> outcome;
  std::optional<MetricsRecord> record;
  std::string error;
};

EntryResult run_entry(const CorpusEntry& entry) {
  EntryResult r;
  try {
    std::string text = read_file(entry.path);
    TestCaseAst ast = entry.tree_document ? ingest_tree(text)
                                          : parse_test(std::move(text), {entry.name, entry.project});
    for (const auto& set : entry.oracle.failure_sets)
      for (StmtId id : set)
        if (id >= ast.statements().size())
          throw SchemaError("oracle/failure_sets", fmt::format("statement {} does not exist", id));
    auto oracle = make_oracle(entry.oracle);
    ReductionOutcome outcome = reduce(ast, *oracle);
    outcome.test_name = entry.name;
    if (!entry.project.empty()) outcome.project = entry.project;
    r.record = metrics_from_outcome(ast, outcome);
    r.outcome = std::move(outcome);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

CorpusConfig parse_corpus_config(std::string_view document, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "expected an object");

  CorpusConfig cfg;
  cfg.input_hash = fnv1a_hex(document);
  cfg.corpus_name = get_string(doc, "corpus_name", "");
  const fs::path out = opt_string(doc, "output_dir", "", "out/" + cfg.corpus_name);
  cfg.output_dir = out.is_absolute() ? out : base_dir / out;
  if (doc.contains("policy")) cfg.policy = parse_policy(get_string(doc, "policy", ""), "/policy");
  if (doc.contains("parallelism")) {
    const long long p = get_int(doc["parallelism"], "/parallelism");
    if (p < 1) throw SchemaError("/parallelism", "must be at least 1");
    cfg.parallelism = static_cast<std::size_t>(p);
  }

  const json& entries = require(doc, "entries", "");
  if (!entries.is_array()) throw SchemaError("/entries", "expected an array");
  if (entries.empty()) throw EmptyCorpus();
  std::set<std::string> names;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string path = "/entries/" + std::to_string(i);
    const json& e = entries[i];
    if (!e.is_object()) throw SchemaError(path, "expected an object");
    CorpusEntry entry;
    entry.name = get_string(e, "name", path);
    if (entry.name.empty() || entry.name.find('/') != std::string::npos)
      throw SchemaError(path + "/name", "must be non-empty and contain no '/'");
    if (!names.insert(entry.name).second)
      throw SchemaError(path + "/name", "duplicate entry name '" + entry.name + "'");
    const bool has_test = e.contains("test"), has_tree = e.contains("tree");
    if (has_test == has_tree) throw SchemaError(path, "exactly one of \"test\" and \"tree\" is required");
    entry.tree_document = has_tree;
    const fs::path p = get_string(e, has_tree ? "tree" : "test", path);
    entry.path = p.is_absolute() ? p : base_dir / p;
    entry.project = opt_string(e, "project", path);
    entry.oracle = parse_oracle(require(e, "oracle", path), path + "/oracle", base_dir, cfg.policy);
    cfg.entries.push_back(std::move(entry));
  }
  return cfg;
}

CorpusConfig load_corpus_config(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw SchemaError(path.string(), e.what());
  }
  return parse_corpus_config(text, path.parent_path());
}

CorpusRun run_corpus(const CorpusConfig& config, bool write) {
  if (config.entries.empty()) throw EmptyCorpus();

  std::vector<EntryResult> results(config.entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < config.entries.size();)
      results[i] = run_entry(config.entries[i]);
  };
  const std::size_t threads = std::min(config.parallelism, config.entries.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  CorpusRun run;
  std::vector<MetricsRecord> records;
  std::vector<EntryStatus> statuses;
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto& r = results[i];
    EntryStatus st{config.entries[i].name, r.error.empty(), r.error};
    if (!st.ok) run.any_errors = true;
    if (r.record) records.push_back(std::move(*r.record));
    statuses.push_back(std::move(st));
    run.outcomes.push_back(std::move(r.outcome));
  }

  run.bundle = analyze(config.corpus_name, std::move(records));
  run.bundle.entries = std::move(statuses);
  run.bundle.provenance.input_hash = config.input_hash;
  run.bundle.provenance.source = "corpus:" + config.corpus_name;
  for (const auto& st : run.bundle.entries)
    if (!st.ok) run.bundle.warnings.push_back(fmt::format("entry {} failed: {}", st.name, st.error));

  if (write) {
    write_bundle(run.bundle, config.output_dir);
    const fs::path dir = config.output_dir / "reductions";
    fs::create_directories(dir);
    for (const auto& o : run.outcomes) {
      if (!o) continue;
      std::ofstream(dir / (o->test_name + ".json"), std::ios::binary) << reduction_report_json(*o);
    }
  }
  return run;
}

}  // namespace redustat
