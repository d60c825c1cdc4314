#include "specsynth/lang/classify.hpp"
#include "specsynth/lang/parser.hpp"
#include "specsynth/symbolic/replay.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>

using namespace specsynth;

namespace {

const Program &corpus() {
  static Program p = *parseFile(std::string(SPECSYNTH_CORPUS_DIR) + "/setlist.c").program;
  return p;
}

} // namespace

TEST(Replay, EveryUnfoldedLeafOfEveryModifier) {
  auto start = std::chrono::steady_clock::now();
  int leaves = 0, models = 0;
  for (const auto &fn : classify(corpus()).modifiers) {
    CallPattern root = modifierPattern(corpus(), fn);
    SEResult r = seAbstract(corpus(), root);
    for (const Leaf *l : r.finals()) {
      if (l->config.aSubFlag)
        continue;
      ++leaves;
      ReplayReport rep = replayLeaf(corpus(), root, *l, 0, 3);
      models += rep.models;
      EXPECT_GT(rep.models, 0) << fn << " leaf " << l->node;
      for (const auto &v : rep.violations)
        ADD_FAILURE() << fn << " leaf " << l->node << ": " << v;
    }
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_GT(leaves, 20);
  EXPECT_LT(secs, 60.0);
  RecordProperty("models", models);
  std::printf("%d leaves, %d models, %.2fs\n", leaves, models, secs);
}

TEST(Replay, InsertLeafWithStoredValue) {
  CallPattern root = modifierPattern(corpus(), "insert");
  SEResult r = seAbstract(corpus(), root);
  // second lazily loaded node already holds x: duplicate, nothing written
  int checked = 0;
  for (const Leaf *l : r.finals())
    if (!l->config.aSubFlag && l->config.result && l->config.result->isInt() &&
        l->config.result->term() == LinTerm(0) && l->config.allocations.empty()) {
      auto rep = replayLeaf(corpus(), root, *l, 0, 3);
      EXPECT_TRUE(rep.violations.empty());
      ++checked;
    }
  EXPECT_GT(checked, 0);
}

TEST(Replay, CatchesAWrongLeaf) {
  CallPattern root = modifierPattern(corpus(), "insert");
  SEResult r = seAbstract(corpus(), root);
  Leaf l = *r.finals().back();
  l.config.result = Value::integer(7);
  auto rep = replayLeaf(corpus(), root, l, 0, 3);
  EXPECT_FALSE(rep.violations.empty());
}
