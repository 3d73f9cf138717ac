#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "redustat/stmt_model.hpp"

namespace redustat {

enum class VerdictStatus : std::uint8_t { Fail, Pass, Invalid };

std::string_view to_string(VerdictStatus status) noexcept;

struct OracleVerdict {
  VerdictStatus status = VerdictStatus::Invalid;
  std::string signature;  // non-empty iff status == Fail
  std::chrono::milliseconds duration{0};

  static OracleVerdict fail(std::string signature, std::chrono::milliseconds d = {});
  static OracleVerdict pass(std::chrono::milliseconds d = {});
  static OracleVerdict invalid(std::chrono::milliseconds d = {});
};

enum class MatchPolicy : std::uint8_t { AnyFailure, SameSignature };

std::string_view to_string(MatchPolicy policy) noexcept;

/// Decides whether a candidate still fails the way the original did.
class Oracle {
 public:
  virtual ~Oracle() = default;

  /// Verdict for `ast` restricted to the ancestor-closed `retained` set.
  virtual OracleVerdict evaluate(const TestCaseAst& ast, const IdSet& retained) = 0;
  virtual MatchPolicy policy() const = 0;

  /// True when `verdict` counts as "still failing" relative to `baseline`.
  bool accepts(const OracleVerdict& verdict, std::string_view baseline) const;
};

/// Desk-scale ground-truth oracle. A candidate fails iff its retained set
/// contains some failure set. When `blockers` is non-empty the oracle is
/// non-monotone: a candidate that keeps some but not all blocker ids passes.
class ScriptedOracle final : public Oracle {
 public:
  static constexpr std::string_view kSignature = "scripted";

  explicit ScriptedOracle(std::vector<IdSet> failure_sets, IdSet blockers = {});

  OracleVerdict evaluate(const TestCaseAst& ast, const IdSet& retained) override;
  MatchPolicy policy() const override { return MatchPolicy::SameSignature; }

  /// Pure form used by evaluate(); no AST needed.
  bool fails(const IdSet& retained) const;

  const std::vector<IdSet>& failure_sets() const noexcept { return failure_sets_; }
  const IdSet& blockers() const noexcept { return blockers_; }
  bool monotone() const noexcept { return blockers_.empty(); }
  std::size_t calls() const noexcept { return calls_; }

 private:
  std::vector<IdSet> failure_sets_;
  IdSet blockers_;
  std::size_t calls_ = 0;
};

struct OracleConfig {
  // `{candidate}` is replaced by the shell-quoted path of the candidate file.
  // REDUSTAT_CANDIDATE carries the same path in the environment.
  std::string command_template;
  std::filesystem::path workdir = ".";
  std::chrono::milliseconds timeout{60'000};
  std::set<int> fail_exit_codes{1};
  // First capture group (or the whole match) becomes the raw signature.
  std::string signature_pattern;
  MatchPolicy match_policy = MatchPolicy::SameSignature;
  // File name the candidate is written under inside the scratch directory.
  std::string candidate_name = "candidate.java";
  // Re-runs of a non-failing verdict before it is reported.
  int retries = 0;

  /// Throws SchemaError on violated invariants (timeout > 0, pattern present
  /// under SameSignature, pattern compiles).
  void validate() const;
};

/// Runs an external command on the rendered candidate and classifies it by
/// exit code: a code in fail_exit_codes means Fail, 0 means Pass, anything
/// else (other codes, signals, timeouts) means Invalid.
///
/// Not safe to call concurrently on one instance.
class ExternalCommandOracle final : public Oracle {
 public:
  explicit ExternalCommandOracle(OracleConfig config);
  ~ExternalCommandOracle() override;
  ExternalCommandOracle(const ExternalCommandOracle&) = delete;
  ExternalCommandOracle& operator=(const ExternalCommandOracle&) = delete;

  OracleVerdict evaluate(const TestCaseAst& ast, const IdSet& retained) override;
  MatchPolicy policy() const override { return config_.match_policy; }

  OracleVerdict evaluate_text(std::string_view candidate);

  const OracleConfig& config() const noexcept { return config_; }
  const std::filesystem::path& candidate_path() const noexcept { return candidate_path_; }

 private:
  OracleVerdict run_once(std::string_view candidate);

  OracleConfig config_;
  std::optional<std::regex> pattern_;
  std::filesystem::path scratch_;
  std::filesystem::path candidate_path_;
};

/// Strips file paths, line numbers, durations and memory addresses so that
/// fingerprints survive the edits a reduction makes.
std::string normalize_signature(std::string_view raw);

/// Fingerprint of the unreduced test. Throws OriginalDoesNotFail when the
/// full test does not yield a Fail verdict.
std::string baseline_signature(Oracle& oracle, const TestCaseAst& original);

}  // namespace redustat
