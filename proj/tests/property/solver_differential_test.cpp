#include "specsynth/constraints/solver.hpp"
#include "specsynth/inference/inference.hpp"
#include "specsynth/lang/classify.hpp"
#include "specsynth/lang/parser.hpp"

#include <gtest/gtest.h>

#include "../support/oracles.hpp"

using namespace specsynth;

namespace {

struct Differential {
  int definite = 0, unknown = 0;
  std::vector<std::string> disagreements;
};

void checkSatAgainstEnumeration(const oracle::RFormula &rf, Differential &d) {
  Formula f = oracle::toFormula(rf);
  SatAnswer a = checkSat(f);
  bool enumSat = oracle::satisfiableByEnumeration(rf);
  switch (a.result) {
  case SatResult::Unknown: ++d.unknown; return;
  case SatResult::Unsat:
    ++d.definite;
    if (enumSat)
      d.disagreements.push_back("unsat but enumeration finds a model: " + f.str());
    return;
  case SatResult::Sat: {
    ++d.definite;
    std::map<std::string, Int> m;
    for (const auto &s : oracle::symbolsOf(rf))
      m[s] = a.model.intOf(s).value_or(0);
    if (!oracle::evalR(rf, m))
      d.disagreements.push_back("sat with a bad model: " + f.str());
    // a model outside [-8, 8] is fine, one inside must be seen by enumeration
    return;
  }
  }
}

void checkImpliesAgainstEnumeration(const oracle::RFormula &p, const oracle::RFormula &c, Differential &d) {
  ImpliesAnswer a = implies(oracle::toFormula(p), oracle::toFormula(c));
  std::set<std::string> syms;
  for (const auto &s : oracle::symbolsOf(p))
    syms.insert(s);
  for (const auto &s : oracle::symbolsOf(c))
    syms.insert(s);
  bool counter = false;
  oracle::forEachAssignment({syms.begin(), syms.end()}, -8, 8, [&](const std::map<std::string, Int> &m) {
    counter = oracle::evalR(p, m) && !oracle::evalR(c, m);
    return !counter;
  });
  if (a.result == Validity::Unknown) {
    ++d.unknown;
    return;
  }
  ++d.definite;
  if (a.result == Validity::Valid && counter)
    d.disagreements.push_back("valid but enumeration finds a counterexample");
  if (a.result == Validity::Invalid) {
    std::map<std::string, Int> m;
    for (const auto &s : syms)
      m[s] = a.witness.intOf(s).value_or(0);
    if (!oracle::evalR(p, m) || oracle::evalR(c, m))
      d.disagreements.push_back("invalid with a witness that is not one");
  }
}

} // namespace

TEST(SolverDifferential, ThousandSeededFormulas) {
  std::mt19937_64 rng(1234);
  Differential d;
  int sat = 0;
  for (int i = 0; i < 1000; ++i) {
    auto rf = oracle::randomFormula(rng);
    sat += oracle::satisfiableByEnumeration(rf);
    checkSatAgainstEnumeration(rf, d);
  }
  for (const auto &x : d.disagreements)
    ADD_FAILURE() << x;
  EXPECT_GT(sat, 200); // both verdicts are exercised
  EXPECT_LT(sat, 900);
  EXPECT_GT(d.definite, 900);
}

TEST(SolverDifferential, ThousandSeededImplications) {
  std::mt19937_64 rng(4321);
  Differential d;
  for (int i = 0; i < 1000; ++i) {
    auto p = oracle::randomFormula(rng);
    auto c = oracle::randomFormula(rng);
    c.resize(1);
    checkImpliesAgainstEnumeration(p, c, d);
  }
  for (const auto &x : d.disagreements)
    ADD_FAILURE() << x;
  EXPECT_GT(d.definite, 900);
}

TEST(SolverDifferential, UnknownRateOnToolFormulas) {
  Program p = *parseFile(std::string(SPECSYNTH_CORPUS_DIR) + "/setlist.c").program;
  SolverStats::global().reset();
  for (const auto &fn : classify(p).modifiers)
    infer(p, fn);
  double queries = static_cast<double>(SolverStats::global().satQueries.load());
  double unknown = static_cast<double>(SolverStats::global().satUnknown.load());
  ASSERT_GT(queries, 100);
  EXPECT_LT(unknown / queries, 0.10);
}
