#include "specsynth/lang/classify.hpp"
#include "specsynth/lang/parser.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace specsynth;

namespace {

const std::string kCorpus = std::string(SPECSYNTH_CORPUS_DIR) + "/setlist.c";

Program corpus() {
  ParseResult r = parseFile(kCorpus);
  EXPECT_TRUE(r.ok()) << r.errorText();
  return *r.program;
}

std::string firstError(const std::string &src) {
  ParseResult r = parseProgram(src);
  for (const auto &d : r.diagnostics)
    if (d.isError())
      return d.str();
  return {};
}

} // namespace

TEST(Parse, Corpus) {
  ParseResult r = parseFile(kCorpus);
  ASSERT_TRUE(r.ok()) << r.errorText();
  const Program &p = *r.program;
  EXPECT_EQ(p.functions.size(), 7u);
  ASSERT_EQ(p.structs.size(), 2u);
  EXPECT_TRUE(p.findStruct("set"));
  EXPECT_TRUE(p.findStruct("lnode"));
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_FALSE(r.diagnostics[0].isError());
  EXPECT_NE(r.diagnostics[0].message.find("#include"), std::string::npos);
}

TEST(Parse, InsertLoopGuardIsOnLine29) {
  Program p = corpus();
  const FunctionDef &ins = p.function("insert");
  int loops = 0;
  forEachStmt(*ins.body, [&](const Stmt &s) {
    if (s.kind == Stmt::Kind::While) {
      ++loops;
      EXPECT_EQ(s.line, 29);
      EXPECT_EQ(ins.sourceLines.at(s.id), 29);
    }
  });
  EXPECT_EQ(loops, 1);
}

TEST(Parse, Empty) {
  ParseResult r = parseProgram("");
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r.program->functions.empty());
}

TEST(Parse, Diagnostics) {
  EXPECT_NE(firstError("struct n { int v; struct n *next; };\n"
                       "struct n *f(struct n *p) { return p + 1; }")
                .find("unsupported construct: pointer arithmetic"),
            std::string::npos);
  EXPECT_NE(firstError("int f(int x) {\n  return y;\n}").find("line 2"), std::string::npos);
  EXPECT_NE(firstError("int f(int x) { return y; }").find("unknown identifier 'y'"), std::string::npos);
  EXPECT_NE(firstError("int f(int x) { int a[3]; return 0; }").find("unsupported construct: arrays"),
            std::string::npos);
  EXPECT_NE(firstError("struct n { int v; };\nint f(struct n *p) { return (int)p; }").find("casts"),
            std::string::npos);
  EXPECT_NE(firstError("int f(int x) { return x }").find("syntax error"), std::string::npos);
  EXPECT_NE(firstError("struct n { int v; };\nint f(struct n *p) { return p; }").find("type mismatch"),
            std::string::npos);
  EXPECT_NE(firstError("int f(int x) { for (;;) {} }").find("for loops"), std::string::npos);
}

TEST(Parse, MallocNormalized) {
  Program p = corpus();
  int allocs = 0;
  forEachStmt(*p.function("new").body, [&](const Stmt &s) {
    if (s.expr && s.expr->kind == Expr::Kind::Alloc) {
      ++allocs;
      EXPECT_EQ(s.expr->name, "set");
    }
  });
  EXPECT_EQ(allocs, 1);
  EXPECT_FALSE(firstError("struct n { int v; };\nint f(int x) { struct n *p; p = malloc(8); return 0; }").empty());
}

TEST(Parse, IdsIncreaseInSourceOrder) {
  Program p = corpus();
  int last = 0, lastLine = 0;
  for (const auto &f : p.functions)
    forEachStmt(*f.body, [&](const Stmt &s) {
      EXPECT_GT(s.id, last);
      EXPECT_GE(s.line, lastLine);
      last = s.id;
      lastLine = s.line;
    });
}

TEST(Classify, Corpus) {
  Classification c = classify(corpus());
  EXPECT_EQ(c.observers,
            (std::set<std::string>{"insert", "isnull", "isempty", "isfull", "contains", "length", "new"}));
  EXPECT_EQ(c.constructors, (std::set<std::string>{"new"}));
  EXPECT_EQ(c.modifiers.size(), 7u);
}

TEST(Classify, SmallPrograms) {
  Classification v = classify(*parseProgram("void f(void) { return; }").program);
  EXPECT_TRUE(v.observers.empty());
  EXPECT_EQ(v.modifiers, (std::set<std::string>{"f"}));
  Classification g = classify(*parseProgram("int g(int x) { return x; }").program);
  EXPECT_EQ(g.observers, (std::set<std::string>{"g"}));
  EXPECT_EQ(g.modifiers, (std::set<std::string>{"g"}));
  EXPECT_TRUE(g.constructors.empty());
}

TEST(RoundTrip, Corpus) {
  Program p = corpus();
  std::string printed = printProgram(p);
  ParseResult again = parseProgram(printed);
  ASSERT_TRUE(again.ok()) << again.errorText() << printed;
  EXPECT_TRUE(sameStructure(p, *again.program));
  EXPECT_EQ(printProgram(*again.program), printed);
}

// Random expression trees survive printing and reparsing.
TEST(RoundTrip, RandomExpressions) {
  std::mt19937 rng(3);
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    if (depth == 0 || rng() % 4 == 0) {
      switch (rng() % 3) {
      case 0: return std::to_string(rng() % 10);
      case 1: return "x";
      default: return "y";
      }
    }
    static const char *ops[] = {"+", "-", "*", "==", "!=", "<", "<=", ">", ">=", "&&", "||"};
    switch (rng() % 4) {
    case 0: return "!" + gen(depth - 1);
    case 1: return "-(" + gen(depth - 1) + ")";
    default: return "(" + gen(depth - 1) + " " + ops[rng() % 11] + " " + gen(depth - 1) + ")";
    }
  };
  for (int i = 0; i < 200; ++i) {
    std::string src = "int f(int x, int y) {\n  if (" + gen(4) + ")\n    return " + gen(3) +
                      ";\n  else {\n    while (x < y) x = x + 1;\n  }\n  return 0;\n}\n";
    ParseResult a = parseProgram(src);
    ASSERT_TRUE(a.ok()) << a.errorText() << src;
    ParseResult b = parseProgram(printProgram(*a.program));
    ASSERT_TRUE(b.ok()) << printProgram(*a.program);
    EXPECT_TRUE(sameStructure(*a.program, *b.program)) << src << "\n" << printProgram(*a.program);
  }
}

TEST(Liveness, InsertLoop) {
  Program p = corpus();
  const FunctionDef &ins = p.function("insert");
  int whileId = 0;
  forEachStmt(*ins.body, [&](const Stmt &s) {
    if (s.kind == Stmt::Kind::While)
      whileId = s.id;
  });
  auto used = variablesUsedFrom(ins, whileId);
  EXPECT_TRUE(used.count("n"));
  EXPECT_TRUE(used.count("x"));
  EXPECT_TRUE(used.count("s"));
  EXPECT_FALSE(used.count("end_node"));
}
