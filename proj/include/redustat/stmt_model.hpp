#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace redustat {

using StmtId = std::uint32_t;

/// Ordered set of statement ids. Retained/removed sets, failure sets and
/// blockers all use this type.
using IdSet = std::set<StmtId>;

enum class StatementKind : std::uint8_t {
  ExpressionStmt,
  LocalDeclaration,
  Return,
  Throw,
  Break,
  Continue,
  EmptyStmt,
  If,
  For,
  ForEach,
  While,
  DoWhile,
  Try,
  SynchronizedBlock,
  Block,
  LabeledStmt,
};

enum class Category : std::uint8_t { TreeStmt, NonTreeStmt };

/// Category is decided by kind alone: children-bearing kinds are TreeStmts.
constexpr Category category_of(StatementKind kind) noexcept {
  switch (kind) {
    case StatementKind::If:
    case StatementKind::For:
    case StatementKind::ForEach:
    case StatementKind::While:
    case StatementKind::DoWhile:
    case StatementKind::Try:
    case StatementKind::SynchronizedBlock:
    case StatementKind::Block:
    case StatementKind::LabeledStmt:
      return Category::TreeStmt;
    default:
      return Category::NonTreeStmt;
  }
}

std::string_view to_string(StatementKind kind) noexcept;
std::string_view to_string(Category category) noexcept;
std::optional<StatementKind> parse_kind(std::string_view name) noexcept;

/// Half-open byte range [begin, end) into the test source.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct StatementNode {
  StmtId id = 0;
  StatementKind kind = StatementKind::ExpressionStmt;
  Span span;
  std::vector<StmtId> children;
  std::optional<StmtId> parent;
  // The statement is the sole body of a construct written without braces
  // (`if (c) stmt;`). Removing it leaves `{ }` so the parent stays valid.
  bool braceless_slot = false;

  Category category() const noexcept { return category_of(kind); }
  bool is_tree() const noexcept { return category() == Category::TreeStmt; }
};

/// A named test with its statement forest. Immutable once constructed; the
/// constructor checks every structural invariant and throws SchemaError if
/// one is violated.
class TestCaseAst {
 public:
  TestCaseAst() = default;
  TestCaseAst(std::string test_name, std::string project, std::string source,
              std::vector<StatementNode> statements, std::vector<StmtId> roots);

  const std::string& test_name() const noexcept { return test_name_; }
  const std::string& project() const noexcept { return project_; }
  const std::string& source() const noexcept { return source_; }
  const std::vector<StatementNode>& statements() const noexcept { return statements_; }
  const std::vector<StmtId>& roots() const noexcept { return roots_; }

  std::size_t size() const noexcept { return statements_.size(); }
  bool empty() const noexcept { return statements_.empty(); }
  const StatementNode& node(StmtId id) const { return statements_.at(id); }

  /// The node and all its descendants, in pre-order.
  std::vector<StmtId> subtree(StmtId id) const;
  IdSet all_ids() const;

  /// First retained id whose parent is not retained, if any.
  std::optional<StmtId> first_unclosed(const IdSet& retained) const;
  bool is_ancestor_closed(const IdSet& retained) const { return !first_unclosed(retained); }

  /// Copy with a different name/project label.
  TestCaseAst relabeled(std::string test_name, std::string project) const;

 private:
  std::string test_name_;
  std::string project_;
  std::string source_;
  std::vector<StatementNode> statements_;
  std::vector<StmtId> roots_;
};

struct CategoryCounts {
  std::size_t stmts = 0;
  std::size_t ntn = 0;
  std::size_t tn = 0;

  bool operator==(const CategoryCounts&) const = default;
};

CategoryCounts count_categories(const TestCaseAst& ast);

/// Category tally restricted to `ids`.
CategoryCounts count_categories(const TestCaseAst& ast, const IdSet& ids);

/// Materializes the test with every non-retained statement deleted. Retained
/// TreeStmts keep their headers and braces. Throws NotAncestorClosed.
std::string render(const TestCaseAst& ast, const IdSet& retained);

}  // namespace redustat
