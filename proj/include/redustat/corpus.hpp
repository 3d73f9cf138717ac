#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "redustat/oracle.hpp"
#include "redustat/reducer.hpp"
#include "redustat/report.hpp"

namespace redustat {

enum class OracleMode : std::uint8_t { Scripted, External };

struct OracleSpec {
  OracleMode mode = OracleMode::Scripted;
  // Scripted: ids are pre-order statement ids of the parsed test.
  std::vector<IdSet> failure_sets;
  IdSet blockers;
  // External.
  OracleConfig external;
};

struct CorpusEntry {
  std::string name;
  std::filesystem::path path;  // absolute after loading
  bool tree_document = false;  // JSON tree instead of Java text
  std::string project;
  OracleSpec oracle;
};

/// Corpus description, loaded from JSON:
///
///   {"corpus_name": str, "output_dir": path, "policy": "any"|"same",
///    "parallelism": int >= 1,
///    "entries": [{"name": str, "test": path | "tree": path, "project": str,
///                 "oracle": {"mode": "scripted", "failure_sets": [[int]],
///                            "blockers": [int]}
///                         | {"mode": "external", "command": str, ...}}]}
///
/// Relative paths resolve against the config file's directory. `policy`
/// is the default match policy of external oracles.
struct CorpusConfig {
  std::string corpus_name;
  std::filesystem::path output_dir;
  MatchPolicy policy = MatchPolicy::SameSignature;
  std::size_t parallelism = 1;
  std::vector<CorpusEntry> entries;
  std::string input_hash;
};

/// Throws SchemaError (bad document, duplicate entry names) or EmptyCorpus.
CorpusConfig parse_corpus_config(std::string_view document, const std::filesystem::path& base_dir);
CorpusConfig load_corpus_config(const std::filesystem::path& path);

struct CorpusRun {
  ReportBundle bundle;
  // Same order as the config; empty for entries that errored.
  std::vector<std::optional<ReductionOutcome>> outcomes;
  bool any_errors = false;
};

/// Reduces every entry (up to `parallelism` at once) and assembles the
/// bundle. Entry failures are recorded in bundle.entries. When `write` is
/// set the bundle goes to output_dir together with reductions/<name>.json.
CorpusRun run_corpus(const CorpusConfig& config, bool write = true);

}  // namespace redustat
