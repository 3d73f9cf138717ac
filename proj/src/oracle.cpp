#include "redustat/oracle.hpp"

#include <stdlib.h>

#include <algorithm>
#include <fstream>

#include "redustat/error.hpp"
#include "redustat/process.hpp"

namespace redustat {

std::string_view to_string(VerdictStatus status) noexcept {
  switch (status) {
    case VerdictStatus::Fail:
      return "Fail";
    case VerdictStatus::Pass:
      return "Pass";
    case VerdictStatus::Invalid:
      break;
  }
  return "Invalid";
}

std::string_view to_string(MatchPolicy policy) noexcept {
  return policy == MatchPolicy::AnyFailure ? "any" : "same";
}

OracleVerdict OracleVerdict::fail(std::string signature, std::chrono::milliseconds d) {
  return {VerdictStatus::Fail, std::move(signature), d};
}
OracleVerdict OracleVerdict::pass(std::chrono::milliseconds d) { return {VerdictStatus::Pass, {}, d}; }
OracleVerdict OracleVerdict::invalid(std::chrono::milliseconds d) {
  return {VerdictStatus::Invalid, {}, d};
}

bool Oracle::accepts(const OracleVerdict& verdict, std::string_view baseline) const {
  if (verdict.status != VerdictStatus::Fail) return false;
  return policy() == MatchPolicy::AnyFailure || verdict.signature == baseline;
}

ScriptedOracle::ScriptedOracle(std::vector<IdSet> failure_sets, IdSet blockers)
    : failure_sets_(std::move(failure_sets)), blockers_(std::move(blockers)) {
  for (std::size_t i = 0; i < failure_sets_.size(); ++i) {
    if (failure_sets_[i].empty())
      throw SchemaError("/failure_sets/" + std::to_string(i), "failure set must be non-empty");
  }
}

bool ScriptedOracle::fails(const IdSet& retained) const {
  if (!blockers_.empty()) {
    const auto kept = std::count_if(blockers_.begin(), blockers_.end(),
                                    [&](StmtId id) { return retained.contains(id); });
    if (kept > 0 && static_cast<std::size_t>(kept) < blockers_.size()) return false;
  }
  return std::any_of(failure_sets_.begin(), failure_sets_.end(), [&](const IdSet& fs) {
    return std::includes(retained.begin(), retained.end(), fs.begin(), fs.end());
  });
}

OracleVerdict ScriptedOracle::evaluate(const TestCaseAst&, const IdSet& retained) {
  ++calls_;
  return fails(retained) ? OracleVerdict::fail(std::string(kSignature)) : OracleVerdict::pass();
}

void OracleConfig::validate() const {
  if (timeout.count() <= 0) throw SchemaError("timeout", "must be positive");
  if (command_template.empty()) throw SchemaError("command", "must not be empty");
  if (match_policy == MatchPolicy::SameSignature && signature_pattern.empty())
    throw SchemaError("signature_pattern", "required when match policy is 'same'");
  if (!signature_pattern.empty()) {
    try {
      std::regex re(signature_pattern);
    } catch (const std::regex_error& e) {
      throw SchemaError("signature_pattern", std::string("invalid regular expression: ") + e.what());
    }
  }
  if (candidate_name.empty() || candidate_name.find('/') != std::string::npos)
    throw SchemaError("candidate_name", "must be a plain file name");
  if (retries < 0) throw SchemaError("retries", "must not be negative");
}

ExternalCommandOracle::ExternalCommandOracle(OracleConfig config) : config_(std::move(config)) {
  config_.validate();
  if (!config_.signature_pattern.empty()) pattern_.emplace(config_.signature_pattern);
  std::string tmpl = (std::filesystem::temp_directory_path() / "redustat-XXXXXX").string();
  if (::mkdtemp(tmpl.data()) == nullptr) throw SpawnFailure("cannot create scratch directory");
  scratch_ = tmpl;
  candidate_path_ = scratch_ / config_.candidate_name;
}

ExternalCommandOracle::~ExternalCommandOracle() {
  std::error_code ec;
  std::filesystem::remove_all(scratch_, ec);
}

OracleVerdict ExternalCommandOracle::evaluate(const TestCaseAst& ast, const IdSet& retained) {
  return evaluate_text(render(ast, retained));
}

OracleVerdict ExternalCommandOracle::evaluate_text(std::string_view candidate) {
  OracleVerdict verdict = run_once(candidate);
  for (int i = 0; i < config_.retries && verdict.status != VerdictStatus::Fail; ++i) {
    verdict = run_once(candidate);
  }
  return verdict;
}

OracleVerdict ExternalCommandOracle::run_once(std::string_view candidate) {
  {
    std::ofstream out(candidate_path_, std::ios::binary | std::ios::trunc);
    out << candidate;
    if (!out) throw SpawnFailure("cannot write candidate file " + candidate_path_.string());
  }
  const std::string path = candidate_path_.string();
  std::string command = config_.command_template;
  const std::string quoted = shell_quote(path);
  for (std::size_t at = command.find("{candidate}"); at != std::string::npos;
       at = command.find("{candidate}", at + quoted.size())) {
    command.replace(at, 11, quoted);
  }

  const ProcessResult r =
      run_shell(command, config_.workdir, config_.timeout, {{"REDUSTAT_CANDIDATE", path}});
  if (r.timed_out || r.signaled) return OracleVerdict::invalid(r.duration);
  if (config_.fail_exit_codes.contains(r.exit_code)) {
    std::string sig;
    std::smatch m;
    if (pattern_ && std::regex_search(r.output, m, *pattern_)) {
      sig = normalize_signature(m.size() > 1 && m[1].matched ? m[1].str() : m[0].str());
    }
    if (sig.empty()) sig = "exit:" + std::to_string(r.exit_code);
    return OracleVerdict::fail(std::move(sig), r.duration);
  }
  if (r.exit_code == 0) return OracleVerdict::pass(r.duration);
  return OracleVerdict::invalid(r.duration);
}

std::string normalize_signature(std::string_view raw) {
  static const std::regex address(R"(0x[0-9a-fA-F]+|@[0-9a-fA-F]{6,}\b)");
  static const std::regex duration(
      R"(\b\d+(\.\d+)?\s*(ms|us|ns|s|sec|secs|seconds|milliseconds)\b)");
  static const std::regex path(R"((?:[A-Za-z]:)?(?:[\w.\-]*[/\\])+[\w.\-]+)");
  static const std::regex line_no(R"(:\d+\b)");
  static const std::regex line_word(R"(\bline\s+\d+)");
  static const std::regex space(R"(\s+)");

  std::string s(raw);
  s = std::regex_replace(s, address, "<addr>");
  s = std::regex_replace(s, duration, "<time>");
  s = std::regex_replace(s, path, "<path>");
  s = std::regex_replace(s, line_no, ":<n>");
  s = std::regex_replace(s, line_word, "line <n>");
  s = std::regex_replace(s, space, " ");
  const auto b = s.find_first_not_of(' ');
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(' ');
  return s.substr(b, e - b + 1);
}

std::string baseline_signature(Oracle& oracle, const TestCaseAst& original) {
  const OracleVerdict v = oracle.evaluate(original, original.all_ids());
  if (v.status != VerdictStatus::Fail)
    throw OriginalDoesNotFail("original test '" + original.test_name() + "' does not fail (verdict " +
                              std::string(to_string(v.status)) + ")");
  return v.signature;
}

}  // namespace redustat
