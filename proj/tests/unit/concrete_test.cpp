#include "specsynth/concrete/inputs.hpp"
#include "specsynth/concrete/interpreter.hpp"
#include "specsynth/lang/classify.hpp"
#include "specsynth/lang/parser.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

using namespace specsynth;

namespace {

Program corpus() {
  ParseResult r = parseFile(std::string(SPECSYNTH_CORPUS_DIR) + "/setlist.c");
  EXPECT_TRUE(r.ok()) << r.errorText();
  return *r.program;
}

Int call(const Program &p, const char *fn, const ConcreteState &st, std::vector<CValue> extra = {}) {
  std::vector<CValue> args = {st.env.at("s")};
  args.insert(args.end(), extra.begin(), extra.end());
  ConcreteResult r = run(p, fn, args, st);
  EXPECT_TRUE(r.ok());
  return r.returnValue->value;
}

} // namespace

TEST(Concrete, InsertDuplicateLeavesSetUnchanged) {
  Program p = corpus();
  ConcreteState st = buildSet(p, {5}, 1, 4);
  ConcreteResult r = run(p, "insert", {st.env.at("s"), CValue::integer(5)}, st);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.returnValue->value, 0);
  EXPECT_EQ(r.finalState, st);
}

TEST(Concrete, IsnullOnNull) {
  Program p = corpus();
  ConcreteResult r = run(p, "isnull", {CValue::null()}, buildNullSet());
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r.returnValue, CValue::integer(1));
}

TEST(Concrete, InsertIntoEmptySet) {
  // Hand trace: the loop is skipped, one node is linked, size becomes 1.
  Program p = corpus();
  ConcreteState st = buildSet(p, {}, 0, 3);
  ConcreteResult r = run(p, "insert", {st.env.at("s"), CValue::integer(7)}, st);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r.returnValue->value, 1);
  ConcreteState post = r.finalState;
  post.env = st.env;
  EXPECT_EQ(call(p, "length", post), 1);
  EXPECT_EQ(call(p, "contains", post, {CValue::integer(7)}), 1);
  EXPECT_EQ(r.allocated.size(), 1u);
}

TEST(Concrete, NullDerefIsAnOutcome) {
  ParseResult pr = parseProgram("struct n { int v; };\nint f(struct n *p) { return p->v; }");
  ASSERT_TRUE(pr.ok());
  ConcreteResult r = run(*pr.program, "f", {CValue::null()}, ConcreteState{});
  EXPECT_EQ(r.status, ConcreteResult::Status::NullDeref);
  EXPECT_EQ(r.errorLine, 2);
}

TEST(Concrete, StepLimit) {
  ParseResult pr = parseProgram("int f(int x) { while (1) x = x + 1; return x; }");
  ASSERT_TRUE(pr.ok());
  ConcreteResult r = run(*pr.program, "f", {CValue::integer(0)}, ConcreteState{}, 1000);
  EXPECT_EQ(r.status, ConcreteResult::Status::StepLimit);
}

TEST(Concrete, BuildState) {
  Program p = corpus();
  ConcreteState empty = buildSet(p, {}, 0, 2);
  EXPECT_EQ(call(p, "isempty", empty), 1);
  EXPECT_TRUE(buildNullSet().env.at("s").isNull());
  ConcreteState one = buildSet(p, {5}, 1, 4);
  EXPECT_EQ(call(p, "length", one), 1);
  EXPECT_EQ(call(p, "contains", one, {CValue::integer(5)}), 1);
  EXPECT_EQ(call(p, "isfull", one), 0);
}

TEST(Concrete, Deterministic) {
  Program p = corpus();
  ConcreteState st = buildSet(p, {1, 2, 3}, 3, 5);
  ConcreteResult a = run(p, "insert", {st.env.at("s"), CValue::integer(4)}, st);
  ConcreteResult b = run(p, "insert", {st.env.at("s"), CValue::integer(4)}, st);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.finalState, b.finalState);
  EXPECT_EQ(a.returnValue, b.returnValue);
}

// Observer purity is checked, not assumed.
TEST(Concrete, CorpusObserversLeaveHeapUnchanged) {
  Program p = corpus();
  Classification c = classify(p);
  std::vector<ConcreteState> states = {buildNullSet(), buildSet(p, {}, 0, 2), buildSet(p, {1, 2}, 2, 2),
                                       buildSet(p, {0, 3, 1}, 3, 5)};
  for (const auto &fn : {"isnull", "isempty", "isfull", "contains", "length"})
    for (const auto &st : states) {
      const FunctionDef &f = p.function(fn);
      std::vector<CValue> args = {st.env.at("s")};
      if (f.params.size() == 2)
        args.push_back(CValue::integer(1));
      ConcreteResult r = run(p, fn, args, st);
      ASSERT_TRUE(r.ok());
      EXPECT_TRUE(heapDelta(st, r.finalState).empty()) << fn;
    }
  ConcreteState st = buildSet(p, {1}, 1, 3);
  ConcreteResult r = run(p, "insert", {st.env.at("s"), CValue::integer(2)}, st);
  EXPECT_FALSE(heapDelta(st, r.finalState).empty());
  EXPECT_TRUE(c.observers.count("insert"));
}

TEST(Inputs, ExhaustiveCount) {
  InputBounds b;
  b.valueLo = 0;
  b.valueHi = 2;
  b.scalarLo = 0;
  b.scalarHi = 3;
  b.maxLen = 3;
  // lists: 1 + 3 + 9 + 27 = 40 shapes; set objects 4 * 4 * 40, plus NULL; x in {0,1,2}
  auto all = enumerateInputs(corpus(), "insert", b);
  EXPECT_EQ(all.size(), (1u + 4u * 4u * 40u) * 3u);
  std::set<std::string> distinct;
  for (const auto &in : all)
    distinct.insert(in.str(corpus().function("insert")));
  EXPECT_EQ(distinct.size(), all.size());
}

TEST(Inputs, RandomWithinBounds) {
  InputBounds b;
  std::mt19937_64 rng(7);
  int nonNull = 0;
  for (int i = 0; i < 300; ++i) {
    auto in = randomInput(corpus(), "insert", b, rng);
    auto [st, args] = in.materialize(corpus());
    ASSERT_EQ(args.size(), 2u);
    EXPECT_GE(args[1].value, b.valueLo);
    EXPECT_LE(args[1].value, b.valueHi);
    if (args[0].isRef()) {
      ++nonNull;
      EXPECT_LE(static_cast<int>(reachable(st, args[0]).size()), 1 + b.maxLen);
    }
    auto r = run(corpus(), "insert", args, st);
    EXPECT_TRUE(r.ok());
  }
  EXPECT_GT(nonNull, 200);
}

TEST(Inputs, RandomIsSeeded) {
  std::mt19937_64 a(42), b(42);
  for (int i = 0; i < 20; ++i)
    EXPECT_EQ(randomInput(corpus(), "insert", {}, a).str(corpus().function("insert")),
              randomInput(corpus(), "insert", {}, b).str(corpus().function("insert")));
}

TEST(Inputs, ShrinkMakesSmaller) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    auto in = randomInput(corpus(), "insert", {}, rng);
    int size = 0;
    Int mag = 0;
    for (const auto &a : in.args) {
      size += a.size();
      mag += std::abs(a.kind == Shape::Kind::Int ? a.value : 0);
    }
    for (const auto &c : shrinkCandidates(in)) {
      int cs = 0;
      for (const auto &a : c.args)
        cs += a.size();
      EXPECT_LE(cs, size);
      EXPECT_NE(c.str(corpus().function("insert")), in.str(corpus().function("insert")));
    }
  }
}
