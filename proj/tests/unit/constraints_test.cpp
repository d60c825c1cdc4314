#include "specsynth/constraints/formula.hpp"
#include "specsynth/constraints/smtlib.hpp"
#include "specsynth/constraints/solver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace specsynth;

namespace {

LinTerm v(const char *n) { return LinTerm::var(n); }
LinTerm k(Int c) { return LinTerm(c); }

// Independent brute force: every assignment of [lo, hi] to the symbols.
template <typename Fn> void forAll(const std::vector<std::string> &syms, Int lo, Int hi, Fn fn) {
  std::map<std::string, Int> m;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == syms.size()) {
      fn(m);
      return;
    }
    for (Int x = lo; x <= hi; ++x) {
      m[syms[i]] = x;
      rec(i + 1);
    }
  };
  rec(0);
}

bool bruteSat(const Formula &f, Int lo, Int hi) {
  auto symSet = f.symbols();
  std::vector<std::string> syms(symSet.begin(), symSet.end());
  bool found = false;
  forAll(syms, lo, hi, [&](const auto &m) {
    Assignment a;
    a.ints = m;
    if (f.evaluate(a) == std::optional<bool>(true))
      found = true;
  });
  return found;
}

Formula threeNodeExitCondition() {
  return Formula::of({Atom::cmp(v("s.size"), CmpOp::Lt, v("s.capacity")),
                      Atom::cmp(v("v0"), CmpOp::Ne, v("x")), Atom::cmp(v("v1"), CmpOp::Ne, v("x")),
                      Atom::cmp(v("v2"), CmpOp::Ne, v("x"))});
}

} // namespace

TEST(Atom, NormalizesEquivalentComparisons) {
  EXPECT_EQ(Atom::cmp(v("x") + k(0), CmpOp::Gt, k(2) + k(1)), Atom::cmp(v("x"), CmpOp::Gt, k(3)));
  EXPECT_EQ(Atom::cmp(v("x"), CmpOp::Gt, k(3)), Atom::cmp(v("x"), CmpOp::Ge, k(4)));
  EXPECT_EQ(Atom::cmp(v("x") * 2, CmpOp::Le, k(3)), Atom::cmp(v("x"), CmpOp::Le, k(1)));
  EXPECT_EQ(Atom::cmp(v("x") * 2, CmpOp::Eq, k(3)).kind(), Atom::Kind::False);
  EXPECT_EQ(Atom::cmp(v("x"), CmpOp::Lt, v("x")).kind(), Atom::Kind::False);
  EXPECT_EQ(Atom::cmp(v("x"), CmpOp::Gt, k(3)).str(), "?x > 3");
  EXPECT_EQ(Atom::cmp(v("s.size"), CmpOp::Lt, v("s.capacity")).str(), "?s.size < ?s.capacity");
}

TEST(Atom, NegationIsComplement) {
  std::vector<Atom> atoms = {Atom::cmp(v("x"), CmpOp::Le, v("y") + k(2)),
                             Atom::cmp(v("x") * 3, CmpOp::Eq, v("y")),
                             Atom::cmp(v("x"), CmpOp::Ne, k(-1))};
  for (const auto &a : atoms)
    forAll({"x", "y"}, -6, 6, [&](const auto &m) {
      Assignment asg;
      asg.ints = m;
      EXPECT_NE(*a.evaluate(asg), *a.negate().evaluate(asg)) << a.str();
    });
}

TEST(Formula, DuplicateAndSubsumedClausesCollapse) {
  SymAddr s = SymAddr::root("s");
  Formula f = Formula::of({Atom::addrNe(s, SymAddr::null()), Atom::addrNe(s, SymAddr::null())});
  EXPECT_EQ(f.clauses().size(), 1u);
  Formula g;
  g.add(Clause{Atom::cmp(v("x"), CmpOp::Eq, k(1)), Atom::cmp(v("x"), CmpOp::Eq, k(2))});
  g.add(Atom::cmp(v("x"), CmpOp::Eq, k(1)));
  EXPECT_EQ(g.clauses().size(), 1u);
}

TEST(Sat, SmallExamples) {
  EXPECT_EQ(checkSat(Formula::True()).result, SatResult::Sat);
  EXPECT_EQ(checkSat(Formula::of({Atom::cmp(v("x"), CmpOp::Lt, v("x"))})).result, SatResult::Unsat);
  SatAnswer a = checkSat(threeNodeExitCondition());
  ASSERT_EQ(a.result, SatResult::Sat);
  EXPECT_EQ(threeNodeExitCondition().evaluate(a.model), std::optional<bool>(true));
}

TEST(Sat, IntegerTighteningFindsGaps) {
  // 2x = 2y + 1 has rational but no integer solutions.
  Formula f = Formula::of({Atom::cmp(v("x") * 2, CmpOp::Eq, v("y") * 2 + k(1))});
  EXPECT_EQ(checkSat(f).result, SatResult::Unsat);
  Formula g = Formula::of({Atom::cmp(v("x") * 3, CmpOp::Ge, k(1)), Atom::cmp(v("x") * 3, CmpOp::Le, k(2))});
  EXPECT_EQ(checkSat(g).result, SatResult::Unsat);
}

TEST(Sat, AddressClosure) {
  SymAddr a = SymAddr::root("a"), b = SymAddr::root("b"), c = SymAddr::root("c");
  Formula f = Formula::of({Atom::addrEq(a, b), Atom::addrEq(b, c), Atom::addrNe(a, c)});
  EXPECT_EQ(checkSat(f).result, SatResult::Unsat);
  Formula g = Formula::of({Atom::addrEq(a, SymAddr::null()), Atom::addrNe(b, SymAddr::null())});
  SatAnswer r = checkSat(g);
  ASSERT_EQ(r.result, SatResult::Sat);
  EXPECT_EQ(*r.model.addrOf(a), 0);
  EXPECT_NE(*r.model.addrOf(b), 0);
}

TEST(Sat, DisjunctiveClauses) {
  Formula f;
  f.add(Clause{Atom::cmp(v("e"), CmpOp::Eq, v("a")), Atom::cmp(v("e"), CmpOp::Eq, v("b"))});
  f.add(Atom::cmp(v("e"), CmpOp::Ne, v("a")));
  f.add(Atom::cmp(v("e"), CmpOp::Ne, v("b")));
  EXPECT_EQ(checkSat(f).result, SatResult::Unsat);
}

TEST(Implies, Examples) {
  auto x = v("x");
  EXPECT_EQ(implies(Formula::of({Atom::cmp(x, CmpOp::Eq, k(3))}), Formula::of({Atom::cmp(x, CmpOp::Ge, k(3))})).result,
            Validity::Valid);
  ImpliesAnswer r =
      implies(Formula::of({Atom::cmp(x, CmpOp::Ne, k(0))}), Formula::of({Atom::cmp(x, CmpOp::Gt, k(0))}));
  ASSERT_EQ(r.result, Validity::Invalid);
  EXPECT_LT(*r.witness.intOf("x"), 0);

  Formula pre = Formula::of({Atom::cmp(x, CmpOp::Gt, k(2)), Atom::cmp(x, CmpOp::Lt, k(5))});
  Formula post = Formula::of({Atom::cmp(x, CmpOp::Gt, k(0))});
  bool oracle = true;
  forAll({"x"}, -16, 16, [&](const auto &m) {
    Assignment a;
    a.ints = m;
    if (*pre.evaluate(a) && !*post.evaluate(a))
      oracle = false;
  });
  ASSERT_TRUE(oracle);
  EXPECT_EQ(implies(pre, post).result, Validity::Valid);
}

TEST(Simplify, Examples) {
  auto x = v("x");
  Formula f = Formula::of({Atom::cmp(x, CmpOp::Eq, k(3)), Atom::cmp(x, CmpOp::Ge, k(3))});
  Formula s = simplify(f);
  EXPECT_EQ(allModels(s, -16, 16, 0), allModels(f, -16, 16, 0));
  EXPECT_EQ(simplify(Formula::of({Atom::cmp(x, CmpOp::Lt, x)})), Formula::False());
  Formula g = Formula::of({Atom::cmp(x + k(0), CmpOp::Gt, k(2) + k(1))});
  EXPECT_EQ(simplify(g).str(), "?x > 3");
  EXPECT_EQ(allModels(simplify(g), -16, 16, 0), allModels(g, -16, 16, 0));
}

TEST(Enumerate, Examples) {
  auto models = allModels(Formula::of({Atom::cmp(v("x"), CmpOp::Gt, k(6))}), -8, 8, 0);
  ASSERT_EQ(models.size(), 2u);
  EXPECT_EQ(models[0].ints.at("x"), 7);
  EXPECT_EQ(models[1].ints.at("x"), 8);
  EXPECT_TRUE(allModels(Formula::False(), -8, 8, 2).empty());

  // Same condition by plain nested loops.
  std::set<std::vector<Int>> expected;
  for (Int cap = 0; cap <= 2; ++cap)
    for (Int size = 0; size <= 2; ++size)
      for (Int v0 = 0; v0 <= 2; ++v0)
        for (Int v1 = 0; v1 <= 2; ++v1)
          for (Int v2 = 0; v2 <= 2; ++v2)
            for (Int x = 0; x <= 2; ++x)
              if (size < cap && v0 != x && v1 != x && v2 != x)
                expected.insert({cap, size, v0, v1, v2, x});
  std::set<std::vector<Int>> got;
  for (const auto &m : allModels(threeNodeExitCondition(), 0, 2, 0))
    got.insert({m.ints.at("s.capacity"), m.ints.at("s.size"), m.ints.at("v0"), m.ints.at("v1"),
                m.ints.at("v2"), m.ints.at("x")});
  EXPECT_EQ(got, expected);
}

TEST(Smtlib, Export) {
  std::string s = emitSmtlib(Formula::of({Atom::cmp(v("x"), CmpOp::Gt, k(3))}));
  EXPECT_NE(s.find("(declare-const x Int)"), std::string::npos);
  EXPECT_NE(s.find("(assert (> x 3))"), std::string::npos);
  std::string t = emitSmtlib(Formula::True());
  EXPECT_EQ(t.find("assert"), std::string::npos);
  EXPECT_NE(t.find("(check-sat)"), std::string::npos);
  std::string e = emitSmtlib(threeNodeExitCondition());
  std::size_t asserts = 0;
  for (std::size_t p = e.find("(assert"); p != std::string::npos; p = e.find("(assert", p + 1))
    ++asserts;
  EXPECT_EQ(asserts, 4u);
}

// Random conjunctions: definite answers must agree with enumeration.
TEST(SolverProperty, DifferentialAgainstEnumeration) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> names = {"a", "b", "c", "d"};
  auto randTerm = [&] {
    std::uniform_int_distribution<int> coeff(-3, 3), cst(-8, 8), nsym(1, 4);
    LinTerm t(cst(rng));
    int n = nsym(rng);
    for (int i = 0; i < n; ++i)
      t = t + LinTerm::var(names[rng() % 4], coeff(rng));
    return t;
  };
  auto randFormula = [&] {
    Formula f;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i)
      f.add(Atom::cmp(randTerm(), static_cast<CmpOp>(rng() % 6), LinTerm()));
    return f;
  };
  int disagreements = 0, unknown = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = randFormula();
    SatAnswer r = checkSat(f);
    bool bounded = bruteSat(f, -8, 8);
    if (r.result == SatResult::Unsat && bounded)
      ++disagreements;
    // Sat answers carry a model; it must actually satisfy the formula.
    if (r.result == SatResult::Sat && f.evaluate(r.model) != std::optional<bool>(true))
      ++disagreements;
    if (r.result == SatResult::Unknown)
      ++unknown;
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_LT(unknown, 30);
}

TEST(SolverProperty, ImpliesReflexiveAndTransitive) {
  auto x = v("x"), y = v("y");
  Formula a = Formula::of({Atom::cmp(x, CmpOp::Ge, k(5)), Atom::cmp(y, CmpOp::Eq, x)});
  Formula b = Formula::of({Atom::cmp(y, CmpOp::Ge, k(3))});
  Formula c = Formula::of({Atom::cmp(y, CmpOp::Ne, k(0))});
  EXPECT_EQ(implies(a, a).result, Validity::Valid);
  EXPECT_EQ(implies(a, b).result, Validity::Valid);
  EXPECT_EQ(implies(b, c).result, Validity::Valid);
  EXPECT_EQ(implies(a, c).result, Validity::Valid);
}
