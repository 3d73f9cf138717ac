#include "redustat/reducer.hpp"

#include <algorithm>
#include <json.hpp>

#include "redustat/error.hpp"

namespace redustat {
namespace {

IdSet without_subtree(const TestCaseAst& ast, const IdSet& retained, StmtId root,
                      std::size_t& dropped) {
  IdSet out = retained;
  dropped = 0;
  for (StmtId id : ast.subtree(root)) dropped += out.erase(id);
  return out;
}

}  // namespace

std::vector<StmtId> removal_order(const TestCaseAst& ast, const IdSet& retained, PassOrder order) {
  std::vector<StmtId> trees;
  std::vector<StmtId> leaves;
  for (StmtId id : retained) (ast.node(id).is_tree() ? trees : leaves).push_back(id);
  auto last_first = [&](StmtId a, StmtId b) {
    const auto& na = ast.node(a);
    const auto& nb = ast.node(b);
    if (na.span.begin != nb.span.begin) return na.span.begin > nb.span.begin;
    return a > b;
  };
  std::sort(trees.begin(), trees.end(), last_first);
  std::sort(leaves.begin(), leaves.end(), last_first);
  auto& first = order == PassOrder::SubtreesFirst ? trees : leaves;
  auto& second = order == PassOrder::SubtreesFirst ? leaves : trees;
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

PassResult reduction_pass(const TestCaseAst& ast, Oracle& oracle, const IdSet& retained,
                          PassOrder order, std::string_view baseline,
                          std::vector<TraceStep>* trace) {
  PassResult result{retained, false, 0};
  for (StmtId id : removal_order(ast, retained, order)) {
    if (!result.retained.contains(id)) continue;  // went with an ancestor
    std::size_t dropped = 0;
    IdSet candidate = without_subtree(ast, result.retained, id, dropped);
    const OracleVerdict v = oracle.evaluate(ast, candidate);
    ++result.oracle_calls;
    const bool ok = oracle.accepts(v, baseline);
    if (trace) trace->push_back({id, dropped, ok, v.status, v.signature});
    if (ok) {
      result.retained = std::move(candidate);
      result.changed = true;
    }
  }
  return result;
}

ReductionOutcome reduce(const TestCaseAst& ast, Oracle& oracle, PassOrder order) {
  const auto start = std::chrono::steady_clock::now();
  ReductionOutcome out;
  out.test_name = ast.test_name();
  out.project = ast.project();
  out.baseline_signature = baseline_signature(oracle, ast);

  IdSet retained = ast.all_ids();
  for (;;) {
    PassResult pass = reduction_pass(ast, oracle, retained, order, out.baseline_signature, &out.trace);
    ++out.passes;
    out.oracle_calls += pass.oracle_calls;
    retained = std::move(pass.retained);
    if (!pass.changed) break;
  }

  for (const auto& node : ast.statements()) {
    if (retained.contains(node.id)) continue;
    out.removed.insert(node.id);
    ++(node.is_tree() ? out.removed_tn : out.removed_ntn);
  }
  out.retained = std::move(retained);
  out.minimal_source = render(ast, out.retained);
  out.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return out;
}

bool is_one_minimal(const TestCaseAst& ast, Oracle& oracle, const IdSet& retained,
                    std::string_view baseline) {
  for (StmtId id : retained) {
    std::size_t dropped = 0;
    if (oracle.accepts(oracle.evaluate(ast, without_subtree(ast, retained, id, dropped)), baseline))
      return false;
  }
  return true;
}

IdSet brute_force_minimal(const TestCaseAst& ast, Oracle& oracle) {
  const std::size_t n = ast.size();
  if (n > kBruteForceLimit)
    throw TooLarge("brute force is limited to " + std::to_string(kBruteForceLimit) +
                   " statements, test has " + std::to_string(n));
  const std::string baseline = baseline_signature(oracle, ast);

  // Combinations of each size in lexicographic order; the first accepted one
  // is the answer.
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<StmtId> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<StmtId>(i);
    for (;;) {
      const IdSet candidate(pick.begin(), pick.end());
      if (ast.is_ancestor_closed(candidate) &&
          oracle.accepts(oracle.evaluate(ast, candidate), baseline))
        return candidate;
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return ast.all_ids();
}

std::string reduction_report_json(const ReductionOutcome& o) {
  nlohmann::ordered_json doc;
  doc["test_name"] = o.test_name;
  doc["project"] = o.project;
  doc["retained"] = o.retained;
  doc["removed"] = o.removed;
  doc["removed_ntn"] = o.removed_ntn;
  doc["removed_tn"] = o.removed_tn;
  doc["oracle_calls"] = o.oracle_calls;
  doc["passes"] = o.passes;
  doc["wall_time_ms"] = o.wall_time.count();
  doc["baseline_signature"] = o.baseline_signature;
  doc["minimal_source"] = o.minimal_source;
  auto& trace = doc["trace"] = nlohmann::ordered_json::array();
  for (const auto& step : o.trace) {
    nlohmann::ordered_json js;
    js["id"] = step.id;
    js["statements"] = step.statements;
    js["decision"] = step.accepted ? "accepted" : "rejected";
    js["verdict"] = std::string(to_string(step.status));
    js["signature"] = step.signature;
    trace.push_back(std::move(js));
  }
  return doc.dump(2) + "\n";
}

}  // namespace redustat
