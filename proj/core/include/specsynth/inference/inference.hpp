#pragma once

#include "specsynth/concrete/inputs.hpp"
#include "specsynth/symbolic/engine.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace specsynth {

/// o(a1, ..., an) where the ai name parameters of the modifier.
struct ObserverCall {
  std::string observer;
  std::vector<std::string> args;
  std::vector<bool> pointerArg; // only pointer arguments get primed

  std::string str(bool primed = false) const;
  auto operator<=>(const ObserverCall &) const = default;
  bool operator==(const ObserverCall &) const = default;
};

/// `call = rhs` or `ret = rhs`. rhs is a linear term over fresh symbols
/// (_v, _i1, ...) or a constant.
struct Equation {
  std::optional<ObserverCall> call; // empty for ret
  LinTerm rhs;
  bool primed = false;

  bool isRet() const { return !call.has_value(); }
  std::string lhs() const;
  std::string str() const;
  auto operator<=>(const Equation &) const = default;
  bool operator==(const Equation &) const = default;
};

enum class AxiomStatus { Verified, Candidate, Refuted, Specialized };
const char *toString(AxiomStatus s);

struct Axiom {
  std::vector<Equation> antecedent;
  std::vector<Equation> consequent;
  AxiomStatus status = AxiomStatus::Verified;
  int originLeaf = 0; // index of the final configuration it came from
  std::string name;   // A1.., C1..

  std::set<std::string> freshSymbols() const;
  /// Same equations in the same order.
  bool sameEquations(const Axiom &o) const { return antecedent == o.antecedent && consequent == o.consequent; }
  std::string str() const; // lhs=rhs ∧ ... ⟹ ...
};

bool isFreshSymbol(const std::string &name);

/// Hands out _v, _v2, ... for 0/1 observers and _i1, _i2, ... otherwise.
class FreshNames {
public:
  std::string next(bool boolean);

private:
  int bools_ = 0, ints_ = 0;
};

/// Whether the function (or anything it calls) writes a field or allocates.
bool writesHeap(const Program &program, const std::string &function);

/// Observer calls used to describe states of `modifier`: every int-valued
/// observer that leaves the heap alone, applied to each order-preserving
/// injective choice of type-compatible modifier parameters.
std::vector<ObserverCall> observerCalls(const Program &program, const std::string &modifier);

/// Whether every return of the observer yields 0 or 1.
bool isBooleanObserver(const Program &program, const std::string &observer);

/// A state to explain: heap, path condition and modifier argument values.
struct ExplainPattern {
  Heap heap;
  Formula pathCondition;
  std::vector<Value> args;
};

/// Result of running one observer call on a pattern.
struct Observation {
  ObserverCall call;
  enum class Kind { Value, Unknown, Omitted } kind = Kind::Unknown;
  LinTerm value;                  // Kind::Value
  std::optional<Leaf> stuckLeaf; // single stuck leaf, for symbolic differences
  std::string diagnostic;
};

Observation observe(const Program &program, const ExplainPattern &pattern, const ObserverCall &call,
                    const std::string &modifier, int safetyNet = 128);

/// Pattern I of a final configuration: the heap rebuilt from init-heap
/// with null assumptions applied.
ExplainPattern initialPattern(const SymbolicConfiguration &leaf, const std::vector<Value> &rootArgs);
ExplainPattern finalPattern(const SymbolicConfiguration &leaf, const std::vector<Value> &rootArgs);

/// Equations for the pre- and post-state of one final configuration.
struct Explanation {
  std::vector<Equation> pre;
  std::vector<Equation> post;
  std::vector<std::string> diagnostics;
};

Explanation explainLeaf(const Program &program, const std::string &modifier, const SymbolicConfiguration &leaf,
                        const CallPattern &root, int safetyNet = 128);

/// Equations for a single pattern, fresh symbols taken from `names`.
std::vector<Equation> explain(const Program &program, const std::string &modifier, const ExplainPattern &pattern,
                              FreshNames &names, bool primed, int safetyNet = 128);

struct RefineSettings {
  std::uint64_t seed = 42;
  int budget = 500;
  InputBounds bounds;
  int safetyNet = 128;
};

/// Outcome of checking an axiom on one concrete input.
enum class TestVerdict { Skipped, Passed, Failed };

struct TestOutcome {
  TestVerdict verdict = TestVerdict::Skipped;
  std::map<std::string, Int> binding; // fresh symbols fixed by the antecedent
  std::string detail;
};

TestOutcome testAxiom(const Program &program, const std::string &modifier, const Axiom &axiom,
                      const ConcreteInput &input);

struct FalsifyResult {
  enum class Kind { Counterexample, None, Inconclusive } kind = Kind::Inconclusive;
  std::optional<ConcreteInput> counterexample;
  std::string detail;
  int tried = 0;
  int satisfying = 0;
  /// Values fresh symbols took on satisfying inputs.
  std::map<std::string, std::set<Int>> observed;
};

FalsifyResult falsify(const Program &program, const std::string &modifier, const Axiom &axiom,
                      const RefineSettings &settings);

/// Instances of a refuted axiom with its consequent-free fresh symbols fixed,
/// recursively falsified; survivors are returned with status Specialized.
std::vector<Axiom> specialize(const Program &program, const std::string &modifier, const Axiom &axiom,
                              const FalsifyResult &refutation, const RefineSettings &settings);

bool axiomSubsumes(const Axiom &general, const Axiom &specific);

struct RefineLog {
  std::vector<std::string> lines;
  std::vector<Axiom> unresolved; // inconclusive candidates
  std::vector<Axiom> refuted;
  std::vector<std::pair<std::string, ConcreteInput>> counterexamples; // candidate name, input
};

std::vector<Axiom> refine(const Program &program, const std::string &modifier, const std::vector<Axiom> &q,
                          const std::vector<Axiom> &qSharp, const RefineSettings &settings, RefineLog *log = nullptr);

/// Drops axioms subsumed by another one; earlier axioms win ties.
std::vector<Axiom> purgeSubsumed(const std::vector<Axiom> &axioms);

struct Contract {
  std::string function;
  std::vector<std::vector<Equation>> precondition; // disjunction of antecedents
  std::vector<Axiom> postcondition;
  std::set<std::string> assignable;
  std::vector<Axiom> candidates; // not in the postcondition
  std::vector<Axiom> preRefinement;
  std::vector<Axiom> preRefinementCandidates;
  RefineLog refineLog;
  int finalConfigurations = 0;
  std::vector<FoldEvent> folds;
  std::vector<std::string> diagnostics;
};

struct InferSettings {
  RefineSettings refine;
  bool runRefine = true;
};

Contract infer(const Program &program, const std::string &modifier, const InferSettings &settings = {});

/// Bounded exhaustive check of one axiom; returns the violating inputs.
struct CheckReport {
  int inputs = 0;
  int applicable = 0;
  std::vector<std::pair<ConcreteInput, std::string>> violations;
};

CheckReport checkAxiom(const Program &program, const std::string &modifier, const Axiom &axiom,
                       const InputBounds &bounds);

/// Bounds used by `check`: lists up to 3 nodes holding 0..2, other ints 0..3.
InputBounds checkBounds();

} // namespace specsynth
