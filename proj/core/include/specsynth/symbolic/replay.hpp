#pragma once

#include "specsynth/concrete/interpreter.hpp"
#include "specsynth/symbolic/engine.hpp"

namespace specsynth {

struct ReplayReport {
  int models = 0;  // integer models of the leaf's path condition
  int replays = 0; // concrete runs (each model, with and without list tails)
  std::vector<std::string> violations;
};

/// Concretizes every integer model of the leaf's path condition within
/// [lo, hi] and runs the function concretely. The run must follow the
/// leaf's statement trace, return its value and leave the scalar and
/// pointer fields of every object the leaf knows about as the leaf says.
/// Pointers the execution never explored become NULL, or a one-node tail
/// when `withTails` is set.
ReplayReport replayLeaf(const Program &program, const CallPattern &root, const Leaf &leaf, Int lo, Int hi,
                        bool withTails = true, int maxModels = 20000);

} // namespace specsynth
