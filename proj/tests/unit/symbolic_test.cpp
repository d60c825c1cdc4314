#include "specsynth/lang/parser.hpp"
#include "specsynth/symbolic/engine.hpp"

#include <gtest/gtest.h>

#include "specsynth/constraints/solver.hpp"

#include <algorithm>
#include <set>

using namespace specsynth;

namespace {

const Program &corpus() {
  static Program p = *parseFile(std::string(SPECSYNTH_CORPUS_DIR) + "/setlist.c").program;
  return p;
}

Program parse(const std::string &src) {
  auto r = parseProgram(src);
  EXPECT_TRUE(r.ok()) << r.errorText();
  return *r.program;
}

std::string ret(const Leaf &l) { return l.config.result ? l.config.result->str() : "-"; }

} // namespace

TEST(Symbolic, InsertHasTenFinalConfigurations) {
  auto r = seAbstract(corpus(), modifierPattern(corpus(), "insert"));
  EXPECT_EQ(r.leaves.size(), 10u);
  EXPECT_EQ(r.finals().size(), 10u);
  ASSERT_EQ(r.tree.folds.size(), 1u);
  EXPECT_EQ(r.tree.folds[0].recordedEvaluation, 3);
  EXPECT_EQ(r.tree.folds[0].evaluation, 4);
  EXPECT_EQ(r.tree.folds[0].line, 29);
}

TEST(Symbolic, FoldLeafShape) {
  const Program &p = corpus();
  auto r = seAbstract(p, modifierPattern(p, "insert"));
  const Leaf *folded = nullptr;
  for (const auto &l : r.leaves)
    if (l.config.aSubFlag)
      folded = &l;
  ASSERT_NE(folded, nullptr);
  EXPECT_EQ(ret(*folded), "1");
  EXPECT_EQ(folded->config.env.at("end_node").str(), "&s.elems.next.next");
  EXPECT_EQ(folded->config.env.at("n").str(), "&s.elems.next.next.next");
  // three completed iterations: the body's first statement ran three times
  const Stmt *loop = nullptr;
  forEachStmt(*p.function("insert").body, [&](const Stmt &s) {
    if (s.kind == Stmt::Kind::While)
      loop = &s;
  });
  ASSERT_NE(loop, nullptr);
  int bodyFirst = loop->thenS->stmts.front()->id;
  EXPECT_EQ(std::count(folded->config.trace.begin(), folded->config.trace.end(), bodyFirst), 3);
  EXPECT_EQ(std::count(folded->config.trace.begin(), folded->config.trace.end(), loop->id), 4);
  // the recorded state is the object case of the third guard evaluation
  const TreeNode &to = r.tree.nodes.at(r.tree.folds[0].to);
  EXPECT_EQ(to.edge, "guard");
  EXPECT_EQ(r.tree.nodes.at(to.parent).edge, "lazy-object");
}

TEST(Symbolic, WrittenLocations) {
  auto r = seAbstract(corpus(), modifierPattern(corpus(), "insert"));
  std::set<std::string> all;
  for (const auto &l : r.finals())
    for (const auto &loc : l->config.locations)
      all.insert(loc.str());
  std::set<std::string> want = {"s",          "end_node",       "n",        "new_node",
                                "new_node->value", "new_node->next", "s->elems", "s->size"};
  EXPECT_EQ(all, want);
}

TEST(Symbolic, LeafOrderNullCaseFirst) {
  auto r = seAbstract(corpus(), modifierPattern(corpus(), "insert"));
  std::vector<std::string> rets;
  for (const auto &l : r.leaves)
    rets.push_back(ret(l));
  std::vector<std::string> want = {"0", "0", "1", "0", "1", "0", "1", "0", "1", "1"};
  EXPECT_EQ(rets, want);
  EXPECT_EQ(r.leaves[0].config.pathCondition.str(), "NULL = &s");
}

TEST(Symbolic, InsertAllocatesOneNode) {
  auto r = seAbstract(corpus(), modifierPattern(corpus(), "insert"));
  for (const auto &l : r.finals()) {
    if (ret(*l) != "1")
      continue;
    ASSERT_EQ(l->config.allocations.size(), 1u);
    SymAddr a = l->config.allocations[0];
    EXPECT_EQ(a.str(), "&new_node");
    EXPECT_EQ(l->config.heap.at(SymAddr::root("s")).field("elems").str(), "&new_node");
    EXPECT_EQ(l->config.heap.at(a).field("value").str(), "?x");
  }
}

TEST(Symbolic, ObserverWithoutLazyInitOnNull) {
  const Program &p = corpus();
  CallPattern cp;
  cp.function = "isnull";
  cp.args = {Value::null()};
  cp.lazyInit = false;
  auto r = se(p, cp, 0);
  ASSERT_EQ(r.leaves.size(), 1u);
  EXPECT_EQ(ret(r.leaves[0]), "1");
}

TEST(Symbolic, StuckWithoutLazyInit) {
  const Program &p = corpus();
  CallPattern cp = modifierPattern(p, "length");
  cp.lazyInit = false;
  auto r = se(p, cp, 0);
  ASSERT_EQ(r.leaves.size(), 1u);
  EXPECT_EQ(r.leaves[0].kind, LeafKind::Stuck);
  ASSERT_TRUE(r.leaves[0].stuck);
  EXPECT_EQ(r.leaves[0].stuck->function, "length");
  EXPECT_EQ(r.leaves[0].stuck->line, 77);

  // explored set, unexplored list: stuck at the loop guard
  HeapObject set{"set", {{"capacity", Value::symbol("c")}, {"size", Value::symbol("z")},
                         {"elems", Value::address(SymAddr::parse("&s.elems"))}}};
  cp.initialHeap[SymAddr::root("s")] = set;
  r = se(p, cp, 0);
  ASSERT_EQ(r.leaves.size(), 1u);
  ASSERT_TRUE(r.leaves[0].stuck);
  EXPECT_EQ(r.leaves[0].stuck->line, 81);
  EXPECT_EQ(r.leaves[0].config.env.at("count").str(), "0");
}

TEST(Symbolic, ConstantFalseLoopHasOneLeaf) {
  Program p = parse("int f(int x) { while (0) { x = x + 1; } return x; }");
  auto r = seAbstract(p, modifierPattern(p, "f"));
  ASSERT_EQ(r.leaves.size(), 1u);
  EXPECT_EQ(ret(r.leaves[0]), "?x");
  EXPECT_TRUE(r.tree.folds.empty());
}

TEST(Symbolic, BoundedLeafCountGrowsWithUnroll) {
  const Program &p = corpus();
  std::size_t prev = 0;
  for (int k = 1; k <= 5; ++k) {
    auto r = se(p, modifierPattern(p, "insert"), k);
    EXPECT_GT(r.leaves.size(), prev) << k;
    EXPECT_EQ(r.ofKind(LeafKind::Cutoff).size(), 1u);
    prev = r.leaves.size();
  }
}

TEST(Symbolic, SafetyNet) {
  Program p = parse("int f(int x) { while (x > 0) { x = x + 1; } return x; }");
  EXPECT_THROW(se(p, modifierPattern(p, "f"), 0, 16), SafetyNetExceeded);
}

TEST(Symbolic, CounterLoopFoldsUnderIntAbstraction) {
  Program p = parse("int f(int x) { int i; i = 0; while (i < x) { i = i + 1; } return i; }");
  auto r = seAbstract(p, modifierPattern(p, "f"));
  EXPECT_FALSE(r.tree.folds.empty());
  EXPECT_LE(r.leaves.size(), 4u);
}

TEST(Symbolic, RecursionFolds) {
  Program p = parse(R"(
struct node { int v; struct node *next; };
int len(struct node *n) {
  if (n == NULL)
    return 0;
  return 1 + len(n->next);
}
)");
  auto r = seAbstract(p, modifierPattern(p, "len"));
  EXPECT_FALSE(r.tree.folds.empty());
  EXPECT_GE(r.leaves.size(), 2u);
}

TEST(Symbolic, PathConditionsAreDisjoint) {
  const Program &p = corpus();
  auto r = se(p, modifierPattern(p, "insert"), 3);
  for (std::size_t i = 0; i < r.leaves.size(); ++i)
    for (std::size_t j = i + 1; j < r.leaves.size(); ++j) {
      Formula both = r.leaves[i].config.pathCondition.conj(r.leaves[j].config.pathCondition);
      EXPECT_EQ(checkSat(both).result, SatResult::Unsat) << i << " " << j;
    }
}

TEST(Symbolic, DotHasDashedFoldEdge) {
  auto r = seAbstract(corpus(), modifierPattern(corpus(), "insert"));
  std::string d = r.tree.dot();
  EXPECT_NE(d.find("digraph"), std::string::npos);
  EXPECT_NE(d.find("style=dashed"), std::string::npos);
}
