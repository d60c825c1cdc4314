#pragma once

#include "specsynth/lang/ast.hpp"
#include "specsynth/state/configuration.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specsynth {

/// Symbol standing for field `f` of an arbitrary summarized element.
std::string elementSymbol(const std::string &field);

/// A collapsed run of list nodes. `element` is a disjunction (one entry
/// per collapsed node) of conjunctions over element symbols; at least
/// `minCount` nodes are represented.
struct SummaryNode {
  std::string tag;
  std::string selfField;
  std::vector<SymAddr> members;
  int minCount = 1;
  std::vector<std::vector<Atom>> element;
  Value next;

  /// "e.value = ?v0 ∨ e.value = ?v1" style rendering.
  std::string elementStr() const;
};

struct AbstractNode {
  bool summary = false;
  HeapObject object; // plain nodes
  SummaryNode sum;   // summary nodes
};

struct AbstractState {
  std::string function;
  int pc = 0;
  std::map<std::string, Value> env;
  std::map<SymAddr, AbstractNode> nodes; // summaries are keyed by their first member
  Formula constraint;                    // integer part of the path condition, projected
  bool refused = false;                  // cyclic chain: kept concrete
  std::string diagnostic;

  /// Non-null address with no node.
  bool unexplored(const SymAddr &a) const { return !a.isNull() && !nodes.count(a); }
  int summaryCount() const;
  std::string str() const;
};

struct AlphaOptions {
  int minSegment = 1;          // shortest run that is collapsed
  bool abstractIntLocals = true; // integer locals become wildcards
};

/// Shape abstraction: maximal runs of list nodes that are not named by a
/// variable, have exactly one incoming heap reference, and have no other
/// non-null pointer field are collapsed into summary nodes.
AbstractState alpha(const SymbolicConfiguration &c, const Program &program, const AlphaOptions &opt = {});

/// The state viewed as an abstract state without summaries.
AbstractState asAbstract(const SymbolicConfiguration &c);

struct MatchResult {
  bool holds = false;
  std::map<std::string, LinTerm> sigma; // general symbols -> specific terms
  std::string reason;
};

/// Decides whether every concrete state described by `specific` is also
/// described by `general`: structural heap matching with a symbol
/// substitution, then specific.constraint ⇒ σ(general.constraint) plus the
/// element obligations of summaries. Unknown solver answers give false.
MatchResult matchStates(const AbstractState &general, const AbstractState &specific, bool checkConstraint = true);

/// Heap part only: the structure matches and the element obligations hold
/// under the specific state's constraint.
bool heapSubsumes(const AbstractState &general, const AbstractState &specific);

/// Plain symbolic subsumption on un-abstracted states (same pc required).
bool subsumes(const SymbolicConfiguration &general, const SymbolicConfiguration &specific);

/// α-lifted subsumption used to fold loops.
bool abstractSubsumes(const SymbolicConfiguration &general, const SymbolicConfiguration &specific,
                      const Program &program, const AlphaOptions &opt = {});

/// Object-diagram rendering: ellipse = NULL, cloud = uninit, box = node,
/// double box = summary node.
std::string abstractHeapDot(const AbstractState &s, const std::string &name = "heap");

} // namespace specsynth
