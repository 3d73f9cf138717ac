#include "redustat/stmt_model.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include "redustat/error.hpp"

namespace redustat {
namespace {

constexpr std::array<std::pair<StatementKind, std::string_view>, 16> kKindNames{{
    {StatementKind::ExpressionStmt, "ExpressionStmt"},
    {StatementKind::LocalDeclaration, "LocalDeclaration"},
    {StatementKind::Return, "Return"},
    {StatementKind::Throw, "Throw"},
    {StatementKind::Break, "Break"},
    {StatementKind::Continue, "Continue"},
    {StatementKind::EmptyStmt, "EmptyStmt"},
    {StatementKind::If, "If"},
    {StatementKind::For, "For"},
    {StatementKind::ForEach, "ForEach"},
    {StatementKind::While, "While"},
    {StatementKind::DoWhile, "DoWhile"},
    {StatementKind::Try, "Try"},
    {StatementKind::SynchronizedBlock, "SynchronizedBlock"},
    {StatementKind::Block, "Block"},
    {StatementKind::LabeledStmt, "LabeledStmt"},
}};

std::string node_path(std::size_t i) { return "/nodes/" + std::to_string(i); }

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::string_view to_string(StatementKind kind) noexcept {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "ExpressionStmt";
}

std::string_view to_string(Category category) noexcept {
  return category == Category::TreeStmt ? "TreeStmt" : "NonTreeStmt";
}

std::optional<StatementKind> parse_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

TestCaseAst::TestCaseAst(std::string test_name, std::string project, std::string source,
                         std::vector<StatementNode> statements, std::vector<StmtId> roots)
    : test_name_(std::move(test_name)),
      project_(std::move(project)),
      source_(std::move(source)),
      statements_(std::move(statements)),
      roots_(std::move(roots)) {
  const std::size_t n = statements_.size();
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = statements_[i];
    if (node.id != i) throw SchemaError(node_path(i) + "/id", "ids must be contiguous from 0");
    if (node.span.begin > node.span.end || node.span.end > source_.size())
      throw SchemaError(node_path(i) + "/span", "span outside source");
    if (!node.is_tree() && !node.children.empty())
      throw SchemaError(node_path(i) + "/children", "NonTreeStmt cannot have children");
    node.parent.reset();
  }

  auto check_siblings = [&](const std::vector<StmtId>& ids, const std::string& where) {
    for (std::size_t k = 1; k < ids.size(); ++k) {
      if (statements_[ids[k - 1]].span.end > statements_[ids[k]].span.begin)
        throw SchemaError(where, "sibling spans overlap or are out of order");
    }
  };

  std::vector<bool> seen(n, false);
  auto claim = [&](StmtId id, const std::string& where) {
    if (id >= n) throw SchemaError(where, "unknown statement id " + std::to_string(id));
    if (seen[id]) throw SchemaError(where, "statement " + std::to_string(id) + " referenced twice");
    seen[id] = true;
  };
  for (StmtId r : roots_) claim(r, "/roots");
  check_siblings(roots_, "/roots");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = statements_[i];
    for (StmtId c : node.children) {
      claim(c, node_path(i) + "/children");
      auto& child = statements_[c];
      child.parent = static_cast<StmtId>(i);
      const bool inside = child.span.begin >= node.span.begin && child.span.end <= node.span.end;
      if (!inside || child.span == node.span)
        throw SchemaError(node_path(c) + "/span", "child span not strictly inside parent");
    }
    check_siblings(node.children, node_path(i) + "/children");
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw SchemaError("/nodes", "statement not reachable from roots");

  // Ids must follow depth-first pre-order.
  StmtId expected = 0;
  std::vector<StmtId> stack(roots_.rbegin(), roots_.rend());
  while (!stack.empty()) {
    StmtId id = stack.back();
    stack.pop_back();
    if (id != expected++) throw SchemaError(node_path(id) + "/id", "ids are not in pre-order");
    const auto& ch = statements_[id].children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }
}

std::vector<StmtId> TestCaseAst::subtree(StmtId id) const {
  std::vector<StmtId> out;
  std::vector<StmtId> stack{id};
  while (!stack.empty()) {
    StmtId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& ch = node(cur).children;
    stack.insert(stack.end(), ch.rbegin(), ch.rend());
  }
  return out;
}

IdSet TestCaseAst::all_ids() const {
  IdSet ids;
  for (const auto& node : statements_) ids.insert(ids.end(), node.id);
  return ids;
}

std::optional<StmtId> TestCaseAst::first_unclosed(const IdSet& retained) const {
  for (StmtId id : retained) {
    if (id >= statements_.size()) return id;
    const auto& parent = statements_[id].parent;
    if (parent && !retained.contains(*parent)) return id;
  }
  return std::nullopt;
}

TestCaseAst TestCaseAst::relabeled(std::string test_name, std::string project) const {
  TestCaseAst copy = *this;
  copy.test_name_ = std::move(test_name);
  copy.project_ = std::move(project);
  return copy;
}

CategoryCounts count_categories(const TestCaseAst& ast) {
  CategoryCounts counts;
  for (const auto& node : ast.statements()) {
    ++counts.stmts;
    ++(node.is_tree() ? counts.tn : counts.ntn);
  }
  return counts;
}

CategoryCounts count_categories(const TestCaseAst& ast, const IdSet& ids) {
  CategoryCounts counts;
  for (StmtId id : ids) {
    ++counts.stmts;
    ++(ast.node(id).is_tree() ? counts.tn : counts.ntn);
  }
  return counts;
}

std::string render(const TestCaseAst& ast, const IdSet& retained) {
  if (auto bad = ast.first_unclosed(retained)) throw NotAncestorClosed(*bad);

  // Topmost removed statements; their spans are pairwise disjoint.
  std::vector<const StatementNode*> cuts;
  for (const auto& node : ast.statements()) {
    if (retained.contains(node.id)) continue;
    if (!node.parent || retained.contains(*node.parent)) cuts.push_back(&node);
  }
  std::sort(cuts.begin(), cuts.end(),
            [](const auto* a, const auto* b) { return a->span.begin > b->span.begin; });

  std::string out = ast.source();
  for (const auto* node : cuts) {
    const auto [b, e] = node->span;
    if (node->braceless_slot) {
      out.replace(b, e - b, "{ }");
      continue;
    }
    std::size_t ls = b;
    while (ls > 0 && is_blank(out[ls - 1])) --ls;
    std::size_t le = e;
    while (le < out.size() && is_blank(out[le])) ++le;
    const bool own_line = (ls == 0 || out[ls - 1] == '\n') && (le == out.size() || out[le] == '\n');
    if (own_line) {
      out.erase(ls, (le < out.size() ? le + 1 : le) - ls);
    } else {
      out.erase(b, e - b);
    }
  }
  return out;
}

}  // namespace redustat
