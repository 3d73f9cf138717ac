#include <gtest/gtest.h>

#include "redustat/error.hpp"
#include "redustat/java_parser.hpp"
#include "redustat/stmt_model.hpp"
#include "test_support.hpp"

using namespace redustat;

namespace {

CategoryCounts counts(const std::string& src) { return count_categories(parse_test(src)); }

// Plain recursive tally, independent of count_categories.
void tally(const TestCaseAst& ast, StmtId id, CategoryCounts& c) {
  ++c.stmts;
  ast.node(id).is_tree() ? ++c.tn : ++c.ntn;
  for (StmtId ch : ast.node(id).children) tally(ast, ch, c);
}

bool isomorphic(const TestCaseAst& a, StmtId x, const TestCaseAst& b, StmtId y) {
  const auto& nx = a.node(x);
  const auto& ny = b.node(y);
  if (nx.kind != ny.kind || nx.children.size() != ny.children.size()) return false;
  for (std::size_t i = 0; i < nx.children.size(); ++i)
    if (!isomorphic(a, nx.children[i], b, ny.children[i])) return false;
  return true;
}

bool isomorphic(const TestCaseAst& a, const TestCaseAst& b) {
  if (a.roots().size() != b.roots().size()) return false;
  for (std::size_t i = 0; i < a.roots().size(); ++i)
    if (!isomorphic(a, a.roots()[i], b, b.roots()[i])) return false;
  return true;
}

}  // namespace

TEST(Category, DecidedByKindOnly) {
  EXPECT_EQ(category_of(StatementKind::If), Category::TreeStmt);
  EXPECT_EQ(category_of(StatementKind::LabeledStmt), Category::TreeStmt);
  EXPECT_EQ(category_of(StatementKind::Block), Category::TreeStmt);
  EXPECT_EQ(category_of(StatementKind::Return), Category::NonTreeStmt);
  EXPECT_EQ(category_of(StatementKind::EmptyStmt), Category::NonTreeStmt);
  EXPECT_EQ(category_of(StatementKind::LocalDeclaration), Category::NonTreeStmt);
}

TEST(Parser, LeafOnlyBody) {
  EXPECT_EQ(counts("int x = 1; assertEquals(1, x);"), (CategoryCounts{2, 2, 0}));
  const auto ast = parse_test("int x = 1; assertEquals(1, x);");
  EXPECT_EQ(ast.node(0).kind, StatementKind::LocalDeclaration);
  EXPECT_EQ(ast.node(1).kind, StatementKind::ExpressionStmt);
}

TEST(Parser, IfWithTwoChildren) {
  const auto ast = parse_test("if (a) { foo(); bar(); }");
  EXPECT_EQ(count_categories(ast), (CategoryCounts{3, 2, 1}));
  EXPECT_EQ(ast.node(0).kind, StatementKind::If);
  EXPECT_EQ(ast.node(0).children, (std::vector<StmtId>{1, 2}));
}

TEST(Parser, ThirteenLeafBody) {
  std::string src;
  for (int i = 0; i < 13; ++i) src += "call" + std::to_string(i) + "();\n";
  EXPECT_EQ(counts(src), (CategoryCounts{13, 13, 0}));
}

TEST(Parser, ValidatorExceptionShape) {
  // Six leaves and one try, like the seven-statement mutant test.
  const std::string src = R"(@Test
public void testValidatorException() {
  ValidatorResources resources = new ValidatorResources();
  Validator validator = new Validator(resources, "form");
  TestBean bean = new TestBean();
  validator.setParameter(Validator.BEAN_PARAM, bean);
  try {
    validator.validate();
    fail("ValidatorException should occur here!");
  } catch (ValidatorException expected) {
  }
})";
  const auto ast = parse_test(src);
  EXPECT_EQ(ast.test_name(), "testValidatorException");
  EXPECT_EQ(count_categories(ast), (CategoryCounts{7, 6, 1}));
}

TEST(Parser, EmptyBody) {
  EXPECT_EQ(counts(""), (CategoryCounts{0, 0, 0}));
  EXPECT_EQ(counts("void t() { }"), (CategoryCounts{0, 0, 0}));
}

TEST(Parser, PreOrderIds) {
  const auto ast = parse_test("a(); while (x) { b(); if (y) c(); } d();");
  ASSERT_EQ(ast.size(), 6u);
  EXPECT_EQ(ast.node(1).kind, StatementKind::While);
  EXPECT_EQ(ast.node(1).children, (std::vector<StmtId>{2, 3}));
  EXPECT_EQ(ast.node(3).kind, StatementKind::If);
  EXPECT_EQ(ast.node(3).children, (std::vector<StmtId>{4}));
  EXPECT_TRUE(ast.node(4).braceless_slot);
  EXPECT_EQ(ast.roots(), (std::vector<StmtId>{0, 1, 5}));
}

TEST(Parser, TryChildrenFlattened) {
  const auto ast = parse_test("try { a(); } catch (E e) { b(); c(); } finally { d(); }");
  EXPECT_EQ(ast.node(0).kind, StatementKind::Try);
  EXPECT_EQ(ast.node(0).children, (std::vector<StmtId>{1, 2, 3, 4}));
}

TEST(Parser, ForVersusForEach) {
  EXPECT_EQ(parse_test("for (int i = 0; i < n; i++) {}").node(0).kind, StatementKind::For);
  EXPECT_EQ(parse_test("for (String s : list) {}").node(0).kind, StatementKind::ForEach);
  EXPECT_EQ(parse_test("for (;;) {}").node(0).kind, StatementKind::For);
}

TEST(Parser, LabelsBlocksAndJumps) {
  const auto ast = parse_test("outer: for (;;) { { break outer; } continue; } return 1; throw e;");
  EXPECT_EQ(ast.node(0).kind, StatementKind::LabeledStmt);
  EXPECT_EQ(ast.node(1).kind, StatementKind::For);
  EXPECT_EQ(ast.node(2).kind, StatementKind::Block);
  EXPECT_EQ(ast.node(3).kind, StatementKind::Break);
  EXPECT_EQ(ast.node(4).kind, StatementKind::Continue);
  EXPECT_EQ(ast.node(5).kind, StatementKind::Return);
  EXPECT_EQ(ast.node(6).kind, StatementKind::Throw);
}

TEST(Parser, LambdaAndAnonymousClassBodiesAreOpaque) {
  const auto ast = parse_test(
      "list.forEach(x -> { if (x) { y(); } });\n"
      "Runnable r = new Runnable() { public void run() { z(); } };");
  EXPECT_EQ(count_categories(ast), (CategoryCounts{2, 2, 0}));
  EXPECT_EQ(ast.node(1).kind, StatementKind::LocalDeclaration);
}

TEST(Parser, CommentsAndStringsDoNotConfuseTheLexer) {
  const auto ast = parse_test(
      "// if (x) {\n"
      "String s = \"} ; {\"; /* while (y) { */ char c = '}';\n"
      "String t = \"\"\"\n  text { block ;\n\"\"\";");
  EXPECT_EQ(count_categories(ast), (CategoryCounts{3, 3, 0}));
}

TEST(Parser, DeclarationHeuristic) {
  const auto ast = parse_test(
      "Map<String, List<Integer>> m = new HashMap<>();\n"
      "int[] xs = {1, 2};\n"
      "final var q = 3;\n"
      "x = 4;\n"
      "a.b(c);\n"
      "i++;");
  EXPECT_EQ(ast.node(0).kind, StatementKind::LocalDeclaration);
  EXPECT_EQ(ast.node(1).kind, StatementKind::LocalDeclaration);
  EXPECT_EQ(ast.node(2).kind, StatementKind::LocalDeclaration);
  EXPECT_EQ(ast.node(3).kind, StatementKind::ExpressionStmt);
  EXPECT_EQ(ast.node(4).kind, StatementKind::ExpressionStmt);
  EXPECT_EQ(ast.node(5).kind, StatementKind::ExpressionStmt);
}

TEST(Parser, SyntaxErrorsCarryLocation) {
  try {
    parse_test("a();\n  if (x) { b();");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_GE(e.line(), 2u);
  }
  EXPECT_THROW(parse_test("a()"), SyntaxError);
  EXPECT_THROW(parse_test("} a();"), SyntaxError);
  EXPECT_THROW(parse_test("else { }"), SyntaxError);
  EXPECT_THROW(parse_test("try { }"), SyntaxError);
  EXPECT_THROW(parse_test("f(];"), SyntaxError);
}

TEST(Parser, UnsupportedConstructs) {
  try {
    parse_test("a();\nswitch (x) { case 1: break; }");
    FAIL() << "expected UnsupportedConstruct";
  } catch (const UnsupportedConstruct& e) {
    EXPECT_EQ(e.construct(), "switch statement");
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_test("class Local { }"), UnsupportedConstruct);
  EXPECT_THROW(parse_test("final class Local { }"), UnsupportedConstruct);
}

TEST(Model, ConstructorRejectsBrokenTrees) {
  auto node = [](StmtId id, StatementKind k, std::size_t b, std::size_t e, std::vector<StmtId> ch = {}) {
    StatementNode n;
    n.id = id;
    n.kind = k;
    n.span = {b, e};
    n.children = std::move(ch);
    return n;
  };
  const std::string src = "if (a) { b(); }";
  EXPECT_NO_THROW(TestCaseAst("t", "", src,
                              {node(0, StatementKind::If, 0, 15, {1}),
                               node(1, StatementKind::ExpressionStmt, 9, 13)},
                              {0}));
  // Leaf with children.
  EXPECT_THROW(TestCaseAst("t", "", src,
                           {node(0, StatementKind::ExpressionStmt, 0, 15, {1}),
                            node(1, StatementKind::ExpressionStmt, 9, 13)},
                           {0}),
               SchemaError);
  // Child span escapes parent.
  EXPECT_THROW(TestCaseAst("t", "", src,
                           {node(0, StatementKind::If, 0, 10, {1}),
                            node(1, StatementKind::ExpressionStmt, 9, 13)},
                           {0}),
               SchemaError);
  // Unreachable node.
  EXPECT_THROW(TestCaseAst("t", "", src,
                           {node(0, StatementKind::If, 0, 15),
                            node(1, StatementKind::ExpressionStmt, 9, 13)},
                           {0}),
               SchemaError);
  // Span beyond source.
  EXPECT_THROW(TestCaseAst("t", "", src, {node(0, StatementKind::EmptyStmt, 0, 99)}, {0}),
               SchemaError);
}

TEST(Render, IdentityAndEmpty) {
  const std::string src = "int x = 1;\nif (a) {\n  foo();\n  bar();\n}\nassertEquals(1, x);\n";
  const auto ast = parse_test(src);
  EXPECT_TRUE(same_tokens(render(ast, ast.all_ids()), src));
  EXPECT_TRUE(code_tokens(render(ast, {})).empty());
}

TEST(Render, EmptyIfShellRemains) {
  const auto ast = parse_test("if (a) { foo(); bar(); }");
  const std::string out = render(ast, {0});
  EXPECT_TRUE(same_tokens(out, "if (a) { }"));
  EXPECT_EQ(count_categories(parse_test(out)), (CategoryCounts{1, 0, 1}));
}

TEST(Render, BracelessSlotBecomesEmptyBlock) {
  const auto ast = parse_test("if (a) foo(); else bar(); baz();");
  const std::string out = render(ast, {0, 2});
  EXPECT_TRUE(same_tokens(out, "if (a) { } else bar();")) << out;
  const auto again = parse_test(out);
  EXPECT_EQ(count_categories(again), (CategoryCounts{2, 1, 1}));
}

TEST(Render, KeepsMethodHeaderAndDeletesWholeLines) {
  const std::string src = "@Test\nvoid t() {\n  a();\n  b();\n  c();\n}\n";
  const auto ast = parse_test(src);
  EXPECT_EQ(render(ast, {1}), "@Test\nvoid t() {\n  b();\n}\n");
}

TEST(Render, RejectsNonClosedSets) {
  const auto ast = parse_test("if (a) { foo(); }");
  try {
    render(ast, {1});
    FAIL() << "expected NotAncestorClosed";
  } catch (const NotAncestorClosed& e) {
    EXPECT_EQ(e.id(), 1u);
  }
}

TEST(Render, TryAndDoWhileKeepTheirSyntax) {
  const auto ast = parse_test("try { a(); } catch (E e) { b(); } finally { c(); }\ndo { d(); } while (x);");
  const std::string out = render(ast, {0, 4});
  EXPECT_TRUE(same_tokens(out, "try { } catch (E e) { } finally { } do { } while (x);")) << out;
}

TEST(Counts, AdditivityOverRetainedAndRemoved) {
  const auto ast = parse_test("a(); if (b) { c(); for (;;) { d(); } } e();");
  const IdSet removed{2, 3, 4};
  IdSet retained;
  for (StmtId id : ast.all_ids())
    if (!removed.count(id)) retained.insert(id);
  const auto r = count_categories(ast, removed);
  const auto k = count_categories(ast, retained);
  EXPECT_EQ(r.ntn + r.tn, removed.size());
  EXPECT_EQ(r.stmts + k.stmts, ast.size());
  EXPECT_EQ(r, (CategoryCounts{3, 2, 1}));
}

// Generated trees: parser agrees with the generator, counts agree with a
// recursive tally, and render/parse round-trips keep the retained shape.
class RandomTrees : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(RandomTrees, ParserMatchesGeneratorAndRenderRoundTrips) {
  testkit::RandomTestBuilder builder(GetParam(), 14, 4);
  const TestCaseAst expected = builder.build();
  const TestCaseAst parsed = parse_test(expected.source());
  ASSERT_EQ(parsed.size(), expected.size()) << expected.source();
  for (StmtId i = 0; i < parsed.size(); ++i) {
    EXPECT_EQ(parsed.node(i).kind, expected.node(i).kind) << "id " << i;
    EXPECT_EQ(parsed.node(i).span, expected.node(i).span) << "id " << i;
    EXPECT_EQ(parsed.node(i).children, expected.node(i).children) << "id " << i;
    EXPECT_EQ(parsed.node(i).braceless_slot, expected.node(i).braceless_slot) << "id " << i;
  }

  CategoryCounts c;
  for (StmtId r : parsed.roots()) tally(parsed, r, c);
  EXPECT_EQ(count_categories(parsed), c);

  EXPECT_TRUE(isomorphic(parse_test(render(parsed, parsed.all_ids())), parsed));

  // Drop every subtree rooted at an odd id; the rest must re-parse to the
  // retained subforest.
  IdSet retained;
  for (StmtId id = 0; id < parsed.size(); ++id) {
    const auto& p = parsed.node(id).parent;
    if (id % 2 == 1) continue;
    if (p && !retained.count(*p)) continue;
    retained.insert(id);
  }
  const TestCaseAst reparsed = parse_test(render(parsed, retained));
  EXPECT_EQ(reparsed.size(), retained.size());
  EXPECT_EQ(count_categories(reparsed), count_categories(parsed, retained));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomTrees, ::testing::Range<std::uint32_t>(1, 201));
