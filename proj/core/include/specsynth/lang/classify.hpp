#pragma once

#include "specsynth/lang/ast.hpp"

#include <set>
#include <string>

namespace specsynth {

struct Classification {
  std::set<std::string> observers;    // non-void return type
  std::set<std::string> modifiers;    // every function
  std::set<std::string> constructors; // returns a struct pointer, takes none
};

Classification classify(const Program &program);

/// Variables read by the statements that can still execute once control
/// is at statement `id` (the statement itself, everything after it in
/// enclosing blocks, and enclosing loops).
std::set<std::string> variablesUsedFrom(const FunctionDef &fn, int id);

/// Statement with the given id, or nullptr.
const Stmt *findStmt(const FunctionDef &fn, int id);

} // namespace specsynth
