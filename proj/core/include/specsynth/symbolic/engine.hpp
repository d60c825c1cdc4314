#pragma once

#include "specsynth/abstraction/abstract_state.hpp"
#include "specsynth/lang/ast.hpp"
#include "specsynth/state/configuration.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace specsynth {

/// f(args){φ} together with the heap the call starts from.
struct CallPattern {
  std::string function;
  std::vector<Value> args;
  Formula initialPathCondition;
  Heap initialHeap;
  InitHeap initialInitHeap;
  bool lazyInit = true;
};

/// The root pattern of a modifier: pointer parameters become unexplored
/// root addresses (&s), integer parameters fresh symbols (?x).
CallPattern modifierPattern(const Program &program, const std::string &function);

struct EngineOptions {
  bool abstractSubsumption = false; // fold loops and recursion with ⊑♯
  int maxUnroll = 0;                // per loop site and path; 0 = unbounded
  int safetyNet = 128;              // absolute guard evaluations before aborting
  AlphaOptions alpha;
};

class SafetyNetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class LeafKind { Returned, Error, Cutoff, Stuck };
const char *toString(LeafKind k);

/// Where an execution without lazy initialization could not continue.
struct StuckPoint {
  std::string function;
  int pc = 0;
  int line = 0;
  std::string reason;
};

struct Leaf {
  SymbolicConfiguration config;
  LeafKind kind = LeafKind::Returned;
  int node = 0;
  std::optional<StuckPoint> stuck;
  std::string message;
};

struct TreeNode {
  int id = 0;
  int parent = -1;
  std::string edge; // root, then, else, lazy-object, lazy-null, guard, leaf
  std::string function;
  int pc = 0;
  int line = 0;
  std::string label;
  std::string pathCondition;
};

struct FoldEvent {
  int from = 0; // node of the state that was folded
  int to = 0;   // node of the recorded state that subsumes it
  int pc = 0;
  int line = 0;
  int evaluation = 0;         // guard evaluation count of the folded state
  int recordedEvaluation = 0; // guard evaluation count of the recorded state
};

struct SETree {
  std::vector<TreeNode> nodes;
  std::vector<FoldEvent> folds;
  /// One node per state, fold edges dashed.
  std::string dot(std::size_t maxLabel = 60) const;
};

struct SEResult {
  std::vector<Leaf> leaves;
  SETree tree;
  std::vector<std::string> diagnostics;

  std::vector<const Leaf *> finals() const; // returned leaves
  std::vector<const Leaf *> ofKind(LeafKind k) const;
};

/// Depth-bounded symbolic execution: loops unrolled at most maxUnroll
/// times per site and path; longer paths end in Cutoff leaves.
SEResult se(const Program &program, const CallPattern &call, int maxUnroll, int safetyNet = 128);

/// SE♯: loop guards and recursive calls are checked against the states
/// recorded at the same site on the current path; a successful ⊑♯ check
/// exits the loop and marks the branch with aSubFlag.
SEResult seAbstract(const Program &program, const CallPattern &call, int safetyNet = 128);

SEResult execute(const Program &program, const CallPattern &call, const EngineOptions &options);

} // namespace specsynth
