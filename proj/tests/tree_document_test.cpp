#include <gtest/gtest.h>

#include <json.hpp>

#include "redustat/error.hpp"
#include "redustat/java_parser.hpp"
#include "redustat/tree_document.hpp"
#include "test_support.hpp"

using namespace redustat;
using nlohmann::json;

namespace {

std::string schema_path(const std::string& doc) {
  try {
    ingest_tree(doc);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

const char* kIfDoc = R"({
  "test_name": "t", "source": "if (a) { x(); y(); }",
  "nodes": [
    {"id": 10, "kind": "If", "has_children": true, "span": [0, 20], "children": [12, 11]},
    {"id": 11, "kind": "ExpressionStmt", "has_children": false, "span": [14, 18], "children": []},
    {"id": 12, "kind": "ExpressionStmt", "has_children": false, "span": [9, 13], "children": []}
  ],
  "roots": [10]
})";

}  // namespace

TEST(Ingest, SingleLeaf) {
  const auto ast = ingest_tree(R"({"test_name": "t", "source": "x();",
    "nodes": [{"id": 0, "kind": "ExpressionStmt", "has_children": false, "span": [0, 4], "children": []}],
    "roots": [0]})");
  EXPECT_EQ(count_categories(ast), (CategoryCounts{1, 1, 0}));
}

TEST(Ingest, IfWithTwoLeavesIsRenumberedInPreOrder) {
  const auto ast = ingest_tree(kIfDoc);
  EXPECT_EQ(count_categories(ast), (CategoryCounts{3, 2, 1}));
  EXPECT_EQ(ast.node(0).kind, StatementKind::If);
  EXPECT_EQ(ast.node(1).span, (Span{9, 13}));
  EXPECT_EQ(ast.node(2).span, (Span{14, 18}));
  EXPECT_TRUE(same_tokens(render(ast, {0, 2}), "if (a) { y(); }"));
}

TEST(Ingest, UnknownKindsFollowHasChildren) {
  const auto ast = ingest_tree(R"({"test_name": "t", "source": "switch (a) { b(); }",
    "nodes": [{"id": 0, "kind": "SwitchStmt", "has_children": true, "span": [0, 19], "children": [1]},
              {"id": 1, "kind": "AssertStmt", "has_children": false, "span": [13, 17], "children": []}],
    "roots": [0]})");
  EXPECT_EQ(ast.node(0).kind, StatementKind::Block);
  EXPECT_EQ(ast.node(1).kind, StatementKind::ExpressionStmt);
}

TEST(Ingest, SchemaErrorsPointAtTheField) {
  EXPECT_EQ(schema_path(R"({"source": "", "nodes": [], "roots": []})"), "/test_name");
  EXPECT_EQ(schema_path(R"({"test_name": "t", "source": "x", "nodes": [{"id": 0, "has_children": false,
    "span": [0, 1], "children": []}], "roots": [0]})"),
            "/nodes/0/kind");
  EXPECT_EQ(schema_path(R"({"test_name": "t", "source": "x", "nodes": [{"id": 0, "kind": "If",
    "has_children": false, "span": [0, 1], "children": []}], "roots": [0]})"),
            "/nodes/0/has_children");
  EXPECT_EQ(schema_path(R"({"test_name": "t", "source": "x", "nodes": [{"id": 0, "kind": "Return",
    "has_children": false, "span": [0, 1], "children": [], "braceless_slot": 3}], "roots": [0]})"),
            "/nodes/0/braceless_slot");
  EXPECT_NE(schema_path("not json"), "<no error>");
  EXPECT_NE(schema_path(R"({"test_name": "t", "source": "x", "nodes": [{"id": 0, "kind": "Return",
    "has_children": false, "span": [0, 1], "children": []}], "roots": [7]})"),
            "<no error>");
}

TEST(Ingest, CyclesAreReported) {
  EXPECT_THROW(ingest_tree(R"({"test_name": "t", "source": "{ { } }",
    "nodes": [{"id": 0, "kind": "Block", "has_children": true, "span": [0, 7], "children": [1]},
              {"id": 1, "kind": "Block", "has_children": true, "span": [2, 5], "children": [0]}],
    "roots": [0]})"),
               CycleError);
  // A cycle disconnected from the roots is still a cycle.
  EXPECT_THROW(ingest_tree(R"({"test_name": "t", "source": "{ } { }",
    "nodes": [{"id": 0, "kind": "EmptyStmt", "has_children": false, "span": [0, 1], "children": []},
              {"id": 1, "kind": "Block", "has_children": true, "span": [2, 3], "children": [2]},
              {"id": 2, "kind": "Block", "has_children": true, "span": [4, 5], "children": [1]}],
    "roots": [0]})"),
               CycleError);
}

TEST(Ingest, DuplicateIdsAndSharedChildren) {
  EXPECT_THROW(ingest_tree(R"({"test_name": "t", "source": "ab",
    "nodes": [{"id": 0, "kind": "EmptyStmt", "has_children": false, "span": [0, 1], "children": []},
              {"id": 0, "kind": "EmptyStmt", "has_children": false, "span": [1, 2], "children": []}],
    "roots": [0]})"),
               SchemaError);
  EXPECT_THROW(ingest_tree(R"({"test_name": "t", "source": "{ x }",
    "nodes": [{"id": 0, "kind": "Block", "has_children": true, "span": [0, 5], "children": [1]},
              {"id": 1, "kind": "EmptyStmt", "has_children": false, "span": [2, 3], "children": []}],
    "roots": [0, 1]})"),
               SchemaError);
}

TEST(TreeDocument, CanonicalFormRoundTripsByteForByte) {
  const auto ast = ingest_tree(kIfDoc);
  const std::string doc = to_tree_document(ast);
  EXPECT_EQ(to_tree_document(ingest_tree(doc)), doc);
  const json j = json::parse(doc);
  EXPECT_EQ(j["nodes"][0]["id"], 0);
  EXPECT_FALSE(j.contains("project"));
}

TEST(TreeDocument, RandomTreesRoundTrip) {
  for (std::uint32_t seed = 1; seed <= 200; ++seed) {
    const auto ast = testkit::RandomTestBuilder(seed, 16, 4).build("r" + std::to_string(seed));
    const std::string doc = to_tree_document(ast);
    const auto back = ingest_tree(doc);
    ASSERT_EQ(to_tree_document(back), doc) << "seed " << seed;
    ASSERT_EQ(back.size(), ast.size());
    for (StmtId i = 0; i < ast.size(); ++i) {
      EXPECT_EQ(back.node(i).kind, ast.node(i).kind);
      EXPECT_EQ(back.node(i).span, ast.node(i).span);
      EXPECT_EQ(back.node(i).braceless_slot, ast.node(i).braceless_slot);
    }
  }
}

TEST(TreeDocument, ParsedJavaSurvivesTheDocumentFormat) {
  const auto ast = parse_test("for (String s : xs) if (s.isEmpty()) continue; done();", {"t", "p"});
  const auto back = ingest_tree(to_tree_document(ast));
  EXPECT_EQ(back.project(), "p");
  EXPECT_EQ(render(back, {0, 1}), render(ast, {0, 1}));
}
