#pragma once

// Random pairs of list states for the abstract subsumption soundness check.

#include "specsynth/abstraction/abstract_state.hpp"
#include "specsynth/lang/parser.hpp"
#include "specsynth/symbolic/engine.hpp"

#include "oracles.hpp"

#include <random>
#include <tuple>

namespace pairs {

using namespace specsynth;

inline const Program &walker() {
  static Program p = *parseProgram("struct node { int v; struct node *next; };\n"
                                   "int walk(struct node *h, struct node *p, int x) {\n"
                                   "  while (p != NULL) { p = p->next; }\n"
                                   "  return x;\n"
                                   "}\n")
                          .program;
  return p;
}

inline int loopId() {
  int id = 0;
  forEachStmt(*walker().function("walk").body, [&](const Stmt &s) {
    if (s.kind == Stmt::Kind::While)
      id = s.id;
  });
  return id;
}

/// A list h -> ... of up to 4 nodes, p somewhere on it, x an int.
struct ListShape {
  std::vector<std::optional<Int>> values; // nullopt: symbolic
  int p = 0;                              // index, values.size() for the tail
  bool openTail = false;                  // last next unexplored
  std::optional<Int> x;
  std::vector<std::tuple<int, CmpOp, Int>> atoms; // node index (-1 = x), op, constant
};

inline SymAddr nodeAddr(int i) {
  SymAddr a = SymAddr::root("h");
  for (int k = 0; k < i; ++k)
    a = a.field("next");
  return a;
}

inline std::string valueSymbol(int i) { return nodeAddr(i).dotted() + ".v"; }

inline SymbolicConfiguration build(const ListShape &s) {
  SymbolicConfiguration c;
  c.function = "walk";
  c.pc = loopId();
  int n = static_cast<int>(s.values.size());
  for (int i = 0; i < n; ++i) {
    HeapObject o{"node", {}};
    o.fields["v"] = s.values[i] ? Value::integer(*s.values[i]) : Value::symbol(valueSymbol(i));
    o.fields["next"] = i + 1 < n || s.openTail ? Value::address(nodeAddr(i + 1)) : Value::null();
    c.heap[nodeAddr(i)] = o;
  }
  auto ptr = [&](int i) {
    if (i < n || (s.openTail && i == n))
      return Value::address(nodeAddr(i));
    return Value::null();
  };
  c.env["h"] = ptr(0);
  c.env["p"] = ptr(s.p);
  c.env["x"] = s.x ? Value::integer(*s.x) : Value::symbol("x");
  for (const auto &[i, op, k] : s.atoms) {
    std::string sym = i < 0 ? "x" : valueSymbol(i);
    bool symbolic = i < 0 ? !s.x : (i < n && !s.values[i]);
    if (symbolic)
      c.pathCondition.add(Atom::cmp(LinTerm::var(sym), op, LinTerm(k)));
  }
  return c;
}

inline ListShape randomShape(std::mt19937_64 &rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  ListShape s;
  int n = pick(0, 4);
  for (int i = 0; i < n; ++i)
    s.values.push_back(pick(0, 1) ? std::optional<Int>(pick(0, 2)) : std::nullopt);
  s.openTail = n > 0 && pick(0, 3) == 0;
  s.p = pick(0, n);
  s.x = pick(0, 1) ? std::optional<Int>(pick(0, 2)) : std::nullopt;
  int m = pick(0, 3);
  for (int k = 0; k < m; ++k)
    s.atoms.emplace_back(pick(-1, n - 1), static_cast<CmpOp>(pick(0, 5)), pick(0, 2));
  return s;
}

/// Small edits that keep the pair related often enough to hit both verdicts.
inline ListShape mutate(ListShape s, std::mt19937_64 &rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  switch (pick(0, 4)) {
  case 0: // insert a node behind p
    if (s.values.size() < 4 && s.p < static_cast<int>(s.values.size())) {
      s.values.insert(s.values.begin() + pick(s.p + 1, static_cast<int>(s.values.size())),
                      pick(0, 1) ? std::optional<Int>(pick(0, 2)) : std::nullopt);
    }
    break;
  case 1: // fix a symbolic value
    for (auto &v : s.values)
      if (!v) {
        v = pick(0, 2);
        break;
      }
    break;
  case 2: // one more constraint
    s.atoms.emplace_back(pick(-1, static_cast<int>(s.values.size()) - 1), static_cast<CmpOp>(pick(0, 5)), pick(0, 2));
    break;
  case 3: // drop a constraint
    if (!s.atoms.empty())
      s.atoms.pop_back();
    break;
  default: break;
  }
  return s;
}

struct Tally {
  int pairs = 0, subsumed = 0, states = 0;
  int rejectedWithWitness = 0; // rejected and some state really falls outside
  std::vector<std::string> violations;
};

inline void checkPair(const SymbolicConfiguration &general, const SymbolicConfiguration &specific, const Program &program,
               Tally &t, int maxNodes = 4) {
  ++t.pairs;
  AbstractState a = alpha(general, program);
  if (!abstractSubsumes(general, specific, program)) {
    for (const auto &st : oracle::concretize(specific, program, 0, 2, maxNodes))
      if (!oracle::inGamma(a, st)) {
        ++t.rejectedWithWitness;
        break;
      }
    return;
  }
  ++t.subsumed;
  for (const auto &st : oracle::concretize(specific, program, 0, 2, maxNodes)) {
    ++t.states;
    if (!oracle::inGamma(a, st)) {
      t.violations.push_back(a.str() + "  vs  " + alpha(specific, program).str());
      return;
    }
  }
}

/// `count` seeded pairs; two thirds are mutations of each other.
inline Tally randomPairs(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  Tally t;
  for (int i = 0; i < count; ++i) {
    ListShape g = randomShape(rng);
    ListShape s = i % 3 == 0 ? randomShape(rng) : mutate(g, rng);
    if (i % 2)
      std::swap(g, s);
    checkPair(build(g), build(s), walker(), t);
  }
  return t;
}

} // namespace pairs
