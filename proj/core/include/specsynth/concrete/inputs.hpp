#pragma once

#include "specsynth/concrete/interpreter.hpp"

#include <memory>
#include <random>

namespace specsynth {

/// Tree description of a concrete argument: NULL, an integer, or an object
/// whose pointer fields are again shapes. Materialized into a fresh heap.
struct Shape {
  enum class Kind { Null, Int, Object };
  Kind kind = Kind::Null;
  Int value = 0;
  std::string tag;
  std::vector<std::pair<std::string, std::shared_ptr<Shape>>> fields; // declaration order

  static Shape null() { return {}; }
  static Shape integer(Int v) { return {Kind::Int, v, {}, {}}; }
  std::string str() const;
  /// Number of objects in the tree.
  int size() const;
};

struct ConcreteInput {
  std::vector<Shape> args;

  /// Fresh state holding the argument structures, and the argument values.
  std::pair<ConcreteState, std::vector<CValue>> materialize(const Program &program) const;
  std::string str(const FunctionDef &fn) const;
};

struct InputBounds {
  Int valueLo = -8, valueHi = 8;   // ints of list nodes and int arguments
  Int scalarLo = -8, scalarHi = 8; // other struct ints (sizes, capacities)
  int maxLen = 4;                  // nodes per list
  int maxDepth = 2;                // nesting of non-list struct pointers
};

/// Every input of `function` within the bounds, in a fixed order.
std::vector<ConcreteInput> enumerateInputs(const Program &program, const std::string &function,
                                           const InputBounds &b);

/// One random input; int arguments are taken from values stored in the
/// generated lists half of the time.
ConcreteInput randomInput(const Program &program, const std::string &function, const InputBounds &b,
                          std::mt19937_64 &rng);

/// Smaller variants of an input: a list node dropped, an int moved towards 0.
std::vector<ConcreteInput> shrinkCandidates(const ConcreteInput &in);

} // namespace specsynth
