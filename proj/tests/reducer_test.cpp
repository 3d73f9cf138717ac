#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "redustat/error.hpp"
#include "redustat/java_parser.hpp"
#include "redustat/metrics.hpp"
#include "redustat/reducer.hpp"
#include "test_support.hpp"

using namespace redustat;

namespace {

TestCaseAst flat(std::size_t n) {
  std::string src;
  for (std::size_t i = 0; i < n; ++i) src += "s" + std::to_string(i) + "();\n";
  return parse_test(src);
}

// Counts calls and can be told to treat some candidates as Invalid.
class CountingOracle final : public Oracle {
 public:
  explicit CountingOracle(ScriptedOracle inner) : inner_(std::move(inner)) {}
  OracleVerdict evaluate(const TestCaseAst& ast, const IdSet& retained) override {
    ++calls;
    return inner_.evaluate(ast, retained);
  }
  MatchPolicy policy() const override { return MatchPolicy::SameSignature; }
  std::size_t calls = 0;

 private:
  ScriptedOracle inner_;
};

}  // namespace

TEST(Reduce, FlatSingletonCause) {
  const auto ast = flat(5);
  auto o = testkit::scripted({{3}});
  const auto out = reduce(ast, o);
  EXPECT_EQ(out.retained, (IdSet{3}));
  EXPECT_EQ(out.removed, (IdSet{0, 1, 2, 4}));
  EXPECT_EQ(out.removed_ntn, 4u);
  EXPECT_EQ(out.removed_tn, 0u);
  EXPECT_EQ(metrics_from_outcome(ast, out).ars, 4u);
  EXPECT_TRUE(same_tokens(out.minimal_source, "s3();"));
}

TEST(Reduce, AncestorMustStay) {
  const auto ast = parse_test("if (a) { x(); y(); } z();");
  auto o = testkit::scripted({{2}});
  const auto out = reduce(ast, o);
  EXPECT_EQ(out.retained, (IdSet{0, 2}));
  EXPECT_EQ(out.removed, (IdSet{1, 3}));
  EXPECT_EQ(out.removed_ntn, 2u);
  EXPECT_EQ(out.removed_tn, 0u);
  EXPECT_TRUE(same_tokens(out.minimal_source, "if (a) { y(); }"));
}

TEST(Reduce, ThirteenLeavesWithSixLeafCause) {
  const auto ast = flat(13);
  auto o = testkit::scripted({{0, 2, 4, 6, 8, 12}});
  const auto out = reduce(ast, o);
  const auto m = metrics_from_outcome(ast, out);
  EXPECT_EQ(m.ars, 7u);
  EXPECT_NEAR(m.prs * 100, 53.84, 0.01);  // 7/13, printed truncated as 53.84%
}

TEST(Reduce, OriginalMustFail) {
  const auto ast = flat(3);
  auto o = testkit::scripted({{5}});
  EXPECT_THROW(reduce(ast, o), OriginalDoesNotFail);
}

TEST(Reduce, EmptyTestNeedsAnEmptyFailure) {
  const auto ast = flat(0);
  auto o = testkit::scripted({{0}});
  EXPECT_THROW(reduce(ast, o), OriginalDoesNotFail);
}

TEST(Reduce, CallsExcludeTheBaselineRun) {
  const auto ast = flat(4);
  CountingOracle o(testkit::scripted({{1}}));
  const auto out = reduce(ast, o);
  EXPECT_EQ(o.calls, out.oracle_calls + 1);
  EXPECT_LE(out.oracle_calls, out.passes * ast.size());
  EXPECT_EQ(out.trace.size(), out.oracle_calls);
}

TEST(Pass, OneMinimalInputIsAFixpoint) {
  const auto ast = parse_test("if (a) { x(); y(); } z();");
  auto o = testkit::scripted({{2}});
  const auto p = reduction_pass(ast, o, {0, 2}, PassOrder::SubtreesFirst, "scripted");
  EXPECT_FALSE(p.changed);
  EXPECT_EQ(p.retained, (IdSet{0, 2}));
}

TEST(Pass, SubtreesFirstRemovesAWholeSubtreeInOneCall) {
  const auto ast = parse_test("keep(); for (;;) { a(); b(); c(); d(); }");
  auto subtrees = testkit::scripted({{0}});
  auto leaves = testkit::scripted({{0}});
  const auto s = reduction_pass(ast, subtrees, ast.all_ids(), PassOrder::SubtreesFirst, "scripted");
  const auto l = reduction_pass(ast, leaves, ast.all_ids(), PassOrder::LeavesFirst, "scripted");
  EXPECT_EQ(s.retained, (IdSet{0}));
  EXPECT_EQ(l.retained, (IdSet{0}));
  // Subtree first: remove For (1 call) then try keep() (1 call).
  EXPECT_EQ(s.oracle_calls, 2u);
  // Leaves first: four leaves, keep(), then the empty For.
  EXPECT_EQ(l.oracle_calls, 6u);
}

TEST(Pass, RemovalOrderIsTreesThenLeavesLastFirst) {
  const auto ast = parse_test("a(); if (x) { b(); } c(); while (y) { }");
  EXPECT_EQ(removal_order(ast, ast.all_ids(), PassOrder::SubtreesFirst),
            (std::vector<StmtId>{4, 1, 3, 2, 0}));
  EXPECT_EQ(removal_order(ast, ast.all_ids(), PassOrder::LeavesFirst),
            (std::vector<StmtId>{3, 2, 0, 4, 1}));
}

TEST(BruteForce, Examples) {
  const auto ast = flat(5);
  auto a = testkit::scripted({{3}});
  EXPECT_EQ(brute_force_minimal(ast, a), (IdSet{3}));
  auto b = testkit::scripted({{1, 4}});
  EXPECT_EQ(brute_force_minimal(ast, b), (IdSet{1, 4}));
  auto c = testkit::scripted({{3}, {2}});
  EXPECT_EQ(brute_force_minimal(ast, c), (IdSet{2}));  // lexicographic tie-break
}

TEST(BruteForce, TooLarge) {
  const auto ast = flat(kBruteForceLimit + 1);
  auto o = testkit::scripted({{0}});
  EXPECT_THROW(brute_force_minimal(ast, o), TooLarge);
}

TEST(BruteForce, SeveralFailureSetsBreakGreedyOptimality) {
  // Greedy deletes s2 first (s0 and s1 still fail together) and ends 1-minimal
  // at {0,1}, while {2} alone is the minimum. Optimality therefore only holds
  // for a single failure set.
  const auto ast = flat(3);
  auto o = testkit::scripted({{2}, {0, 1}});
  const auto out = reduce(ast, o);
  EXPECT_EQ(out.retained, (IdSet{0, 1}));
  EXPECT_TRUE(is_one_minimal(ast, o, out.retained, "scripted"));
  EXPECT_EQ(brute_force_minimal(ast, o), (IdSet{2}));
}

TEST(Report, JsonCarriesTheTrace) {
  const auto ast = flat(3);
  auto o = testkit::scripted({{1}});
  const auto out = reduce(ast, o);
  const auto doc = nlohmann::json::parse(reduction_report_json(out));
  EXPECT_EQ(doc["retained"], nlohmann::json::array({1}));
  EXPECT_EQ(doc["trace"].size(), out.trace.size());
  EXPECT_EQ(doc["trace"][0]["decision"], "accepted");
  EXPECT_EQ(doc["trace"][0]["id"], 2);
  EXPECT_EQ(doc["baseline_signature"], "scripted");
}

// Monotone random instances: every order reaches the unique minimum, which is
// the ancestor closure of the failure set.
TEST(Property, MonotoneInstancesReachTheMinimum) {
  std::mt19937 rng(11);
  for (std::uint32_t seed = 1; seed <= 300; ++seed) {
    const auto ast = testkit::RandomTestBuilder(seed, 12, 3).build();
    std::uniform_int_distribution<StmtId> pick(0, static_cast<StmtId>(ast.size() - 1));
    IdSet failure{pick(rng)};
    if (rng() % 2) failure.insert(pick(rng));
    const IdSet expected = testkit::ancestor_closure(ast, failure);

    for (PassOrder order : {PassOrder::SubtreesFirst, PassOrder::LeavesFirst}) {
      auto o = testkit::scripted({failure});
      const auto out = reduce(ast, o, order);
      ASSERT_EQ(out.retained, expected) << "seed " << seed;
      ASSERT_TRUE(o.fails(out.retained));
      ASSERT_TRUE(ast.is_ancestor_closed(out.retained));
      const auto removed = count_categories(ast, out.removed);
      EXPECT_EQ(removed.ntn, out.removed_ntn);
      EXPECT_EQ(removed.tn, out.removed_tn);
      EXPECT_EQ(out.retained.size() + out.removed.size(), ast.size());
      EXPECT_LE(out.oracle_calls, out.passes * ast.size());
    }
    auto o = testkit::scripted({failure});
    EXPECT_EQ(brute_force_minimal(ast, o), expected);
  }
}

TEST(Property, BruteForceMatchesIndependentEnumeration) {
  std::mt19937 rng(5);
  for (std::uint32_t seed = 1; seed <= 150; ++seed) {
    const auto ast = testkit::RandomTestBuilder(seed + 1000, 10, 3).build();
    std::uniform_int_distribution<StmtId> pick(0, static_cast<StmtId>(ast.size() - 1));
    std::vector<IdSet> sets{{pick(rng)}, {pick(rng), pick(rng)}};
    IdSet blockers;
    if (rng() % 2) blockers = {pick(rng), pick(rng)};
    auto o = testkit::scripted(sets, blockers);
    if (!o.fails(ast.all_ids())) continue;
    EXPECT_EQ(brute_force_minimal(ast, o),
              testkit::enumerate_minimal(ast, [&](const IdSet& s) { return o.fails(s); }))
        << "seed " << seed;
  }
}

TEST(Property, NonMonotoneOutputsStillFailAndAreOneMinimal) {
  std::mt19937 rng(3);
  std::size_t checked = 0;
  for (std::uint32_t seed = 1; seed <= 300; ++seed) {
    const auto ast = testkit::RandomTestBuilder(seed + 5000, 12, 3).build();
    if (ast.size() < 3) continue;
    std::uniform_int_distribution<StmtId> pick(0, static_cast<StmtId>(ast.size() - 1));
    auto o = testkit::scripted({{pick(rng)}, {pick(rng), pick(rng)}}, {pick(rng), pick(rng)});
    if (!o.fails(ast.all_ids())) continue;
    const auto out = reduce(ast, o);
    ASSERT_TRUE(o.fails(out.retained)) << "seed " << seed;
    ASSERT_TRUE(is_one_minimal(ast, o, out.retained, "scripted")) << "seed " << seed;
    ++checked;
  }
  EXPECT_GT(checked, 100u);
}
