#pragma once

#include "specsynth/lang/ast.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace specsynth {

/// Concrete value: an integer, a reference to a heap object, or null.
struct CValue {
  enum class Kind { Int, Ref, Null };
  Kind kind = Kind::Null;
  Int value = 0; // integer, or object id for Ref

  static CValue integer(Int v) { return {Kind::Int, v}; }
  static CValue ref(Int id) { return {Kind::Ref, id}; }
  static CValue null() { return {Kind::Null, 0}; }
  bool isInt() const { return kind == Kind::Int; }
  bool isRef() const { return kind == Kind::Ref; }
  bool isNull() const { return kind == Kind::Null; }
  std::string str() const;
  auto operator<=>(const CValue &) const = default;
  bool operator==(const CValue &) const = default;
};

struct CObject {
  std::string tag;
  std::map<std::string, CValue> fields;
  auto operator<=>(const CObject &) const = default;
  bool operator==(const CObject &) const = default;
};

struct ConcreteState {
  std::map<std::string, CValue> env; // caller-side bindings, e.g. s
  std::map<Int, CObject> heap;
  Int nextRef = 1;

  Int allocate(const StructDef &sd); // fields zero / NULL
  bool operator==(const ConcreteState &) const = default;
};

struct ConcreteResult {
  enum class Status { Ok, NullDeref, StepLimit };
  Status status = Status::Ok;
  std::optional<CValue> returnValue;
  ConcreteState finalState;
  std::vector<int> trace;
  std::vector<Int> allocated; // ids of objects allocated by the run, in order
  int errorLine = 0;

  bool ok() const { return status == Status::Ok; }
};

const char *toString(ConcreteResult::Status s);

constexpr long kDefaultStepLimit = 100000;

/// Deterministic big-step execution of `function(args)` on `state`.
/// Calls are executed inline on the shared heap.
ConcreteResult run(const Program &program, const std::string &function, const std::vector<CValue> &args,
                   const ConcreteState &state, long stepLimit = kDefaultStepLimit);

/// Objects whose contents differ between two heaps (added, removed or changed).
std::vector<Int> heapDelta(const ConcreteState &before, const ConcreteState &after);

/// A `struct set` whose elems list holds `values` in order.
ConcreteState buildSet(const Program &program, const std::vector<Int> &values, Int size, Int capacity);
/// env binds s to NULL.
ConcreteState buildNullSet();

/// Objects reachable from a value, in depth-first field order.
std::vector<Int> reachable(const ConcreteState &state, const CValue &from);

} // namespace specsynth
