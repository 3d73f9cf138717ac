#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <vector>

#include "redustat/oracle.hpp"
#include "redustat/stmt_model.hpp"

namespace redustat {

// Reduction is a fixpoint of greedy sweeps. Each sweep tries to delete every
// retained statement once together with its subtree, TreeStmts before
// NonTreeStmts (SubtreesFirst) or the other way round (LeavesFirst), and
// within each group from the last statement in the source to the first.
// A deletion is kept when the oracle still fails the way the original did.
// The sweep that accepts nothing ends the loop, which makes the result
// 1-minimal for a deterministic oracle.

enum class PassOrder : std::uint8_t { LeavesFirst, SubtreesFirst };

struct TraceStep {
  StmtId id = 0;                  // root of the subtree that was tried
  std::size_t statements = 0;     // retained statements that attempt would delete
  bool accepted = false;
  VerdictStatus status = VerdictStatus::Invalid;
  std::string signature;
};

struct ReductionOutcome {
  std::string test_name;
  std::string project;
  IdSet retained;
  IdSet removed;
  std::size_t removed_ntn = 0;
  std::size_t removed_tn = 0;
  // Candidate evaluations; the baseline run on the original is not counted.
  std::size_t oracle_calls = 0;
  std::size_t passes = 0;
  std::chrono::milliseconds wall_time{0};
  std::string baseline_signature;
  std::string minimal_source;
  std::vector<TraceStep> trace;
};

struct PassResult {
  IdSet retained;
  bool changed = false;
  std::size_t oracle_calls = 0;
};

/// Order in which a sweep tries the statements in `retained`.
std::vector<StmtId> removal_order(const TestCaseAst& ast, const IdSet& retained, PassOrder order);

/// One sweep. `retained` must be ancestor-closed and accepted by the oracle.
PassResult reduction_pass(const TestCaseAst& ast, Oracle& oracle, const IdSet& retained,
                          PassOrder order, std::string_view baseline,
                          std::vector<TraceStep>* trace = nullptr);

/// Computes the minimal-test. Throws OriginalDoesNotFail when the original
/// does not fail; oracle errors (SpawnFailure) propagate and discard progress.
ReductionOutcome reduce(const TestCaseAst& ast, Oracle& oracle,
                        PassOrder order = PassOrder::SubtreesFirst);

/// True when deleting any single retained subtree makes the oracle reject.
bool is_one_minimal(const TestCaseAst& ast, Oracle& oracle, const IdSet& retained,
                    std::string_view baseline);

inline constexpr std::size_t kBruteForceLimit = 20;

/// Minimum-cardinality ancestor-closed accepted subset, ties broken by the
/// lexicographically smallest id sequence. Exhaustive; throws TooLarge above
/// kBruteForceLimit statements.
IdSet brute_force_minimal(const TestCaseAst& ast, Oracle& oracle);

/// Per-test reduction report (outcome fields plus the removal trace).
std::string reduction_report_json(const ReductionOutcome& outcome);

}  // namespace redustat
